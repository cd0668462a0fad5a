#pragma once

#include "ttv/tensor.hpp"

namespace ttv {

// N-dimensional DFT pair. Convention: forward is unnormalized, inverse
// divides by the element count, so ifftn(fftn(x)) == x up to round-off and
// the circular convolution theorem holds as ifftn(fftn(g) .* fftn(x)).
ComplexTensor fftn(const Tensor& a);
ComplexTensor fftn(const ComplexTensor& a);
ComplexTensor ifftn(const ComplexTensor& a);

}  // namespace ttv

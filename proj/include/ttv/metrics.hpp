#pragma once

#include "ttv/tensor.hpp"

namespace ttv {

/// Peak signal-to-noise ratio in dB: 10*log10(peak^2 / MSE) with
/// MSE = |x - ref|_F^2 / count. Returns +infinity when x == ref.
double psnr(const Tensor& x, const Tensor& ref, double peak = 1.0);

}  // namespace ttv

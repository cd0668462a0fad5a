#include "ttv/blur.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ttv/fft.hpp"

namespace ttv {

namespace {

std::string shape_string(const Dims& dims) {
  std::ostringstream os;
  for (std::size_t m = 0; m < dims.size(); ++m) {
    if (m) os << 'x';
    os << dims[m];
  }
  return os.str();
}

// 0-based center index for extent s: ceil((s+1)/2) in 1-based indexing.
std::size_t center_index(std::size_t extent) { return extent / 2; }

void check_imaginary_residue(const ComplexTensor& back, const Tensor& input) {
  const double residue = max_abs_imag(back);
  const double scale = std::max(1.0, frobenius_norm(input));
  if (residue > 1e-10 * scale) {
    throw NumericError("blur: imaginary residue above tolerance");
  }
}

}  // namespace

void Psf::validate() const {
  if (kernel.size() == 0) throw ParamError("Psf: empty kernel");
  if (center.size() != kernel.order()) throw ParamError("Psf: center order mismatch");
  for (std::size_t m = 0; m < center.size(); ++m) {
    if (center[m] >= kernel.dims()[m]) throw ParamError("Psf: center outside kernel");
  }
  if (normalized) {
    double sum = 0.0;
    for (std::size_t i = 0; i < kernel.size(); ++i) {
      if (kernel[i] < 0.0) throw ParamError("Psf: normalized kernel has negative entries");
      sum += kernel[i];
    }
    if (std::abs(sum - 1.0) > 1e-12) throw ParamError("Psf: normalized kernel does not sum to 1");
  }
}

Psf gaussian_psf(const Dims& size, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ParamError("gaussian_psf: sigma must be finite and > 0");
  }
  if (size.empty()) throw ParamError("gaussian_psf: empty size");
  for (auto s : size) {
    if (s < 1) throw ParamError("gaussian_psf: extents must be >= 1");
  }

  Psf psf;
  psf.kernel = Tensor(size);
  psf.center.resize(size.size());
  for (std::size_t m = 0; m < size.size(); ++m) psf.center[m] = center_index(size[m]);

  // exp(-|offset|^2 / (2 sigma^2)) on the integer grid; the density's
  // normalization constant cancels in the renormalization below.
  const std::size_t order = size.size();
  Dims idx(order, 0);
  double sum = 0.0;
  for (std::size_t lin = 0; lin < psf.kernel.size(); ++lin) {
    double sq = 0.0;
    for (std::size_t m = 0; m < order; ++m) {
      const double off = static_cast<double>(idx[m]) - static_cast<double>(psf.center[m]);
      sq += off * off;
    }
    const double v = std::exp(-sq / (2.0 * sigma * sigma));
    psf.kernel[lin] = v;
    sum += v;
    for (std::size_t m = order; m-- > 0;) {
      if (++idx[m] < size[m]) break;
      idx[m] = 0;
    }
  }
  psf.kernel *= 1.0 / sum;
  psf.normalized = true;
  psf.description = "gaussian " + shape_string(size) + " sigma=" + std::to_string(sigma);
  return psf;
}

Psf psf_from_kernel(Tensor kernel, std::string description) {
  Psf psf;
  psf.center.resize(kernel.order());
  for (std::size_t m = 0; m < kernel.order(); ++m) {
    psf.center[m] = center_index(kernel.dims()[m]);
  }
  psf.description = std::move(description) + " " + shape_string(kernel.dims());
  double sum = 0.0;
  bool nonneg = true;
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    sum += kernel[i];
    nonneg = nonneg && kernel[i] >= 0.0;
  }
  psf.normalized = nonneg && std::abs(sum - 1.0) <= 1e-12;
  psf.kernel = std::move(kernel);
  psf.validate();
  return psf;
}

BlurSpectrum BlurSpectrum::from_psf(const Psf& psf, const Dims& dims) {
  psf.validate();
  if (psf.kernel.order() > dims.size()) {
    throw ParamError("spectrum: kernel order exceeds image order");
  }
  for (std::size_t m = 0; m < dims.size(); ++m) {
    const std::size_t extent = m < psf.kernel.order() ? psf.kernel.dims()[m] : 1;
    if (extent > dims[m]) throw ParamError("spectrum: kernel larger than image");
  }

  // Scatter each kernel entry to ((index - center) mod extent): the embedded
  // kernel rotated so its center sits at the origin.
  Tensor rotated(dims);
  const std::size_t korder = psf.kernel.order();
  Dims idx(korder, 0);
  for (std::size_t lin = 0; lin < psf.kernel.size(); ++lin) {
    std::size_t off = 0;
    for (std::size_t m = 0; m < dims.size(); ++m) {
      std::size_t pos = 0;
      if (m < korder) {
        pos = (idx[m] + dims[m] - (psf.center[m] % dims[m])) % dims[m];
      }
      off = off * dims[m] + pos;
    }
    rotated[off] = psf.kernel[lin];
    for (std::size_t m = korder; m-- > 0;) {
      if (++idx[m] < psf.kernel.dims()[m]) break;
      idx[m] = 0;
    }
  }

  BlurSpectrum b;
  b.eigenvalues_ = fftn(rotated);
  for (std::size_t i = 0; i < b.eigenvalues_.size(); ++i) {
    b.max_abs_ = std::max(b.max_abs_, std::abs(b.eigenvalues_[i]));
  }
  b.source_ = psf.description;
  return b;
}

Tensor BlurSpectrum::apply(const Tensor& x) const {
  if (x.dims() != dims()) throw ShapeError("apply: shape mismatch");
  ComplexTensor back = ifftn(eigenvalues_ * fftn(x));
  check_imaginary_residue(back, x);
  return real(back);
}

Tensor BlurSpectrum::apply_adjoint(const Tensor& y) const {
  if (y.dims() != dims()) throw ShapeError("apply_adjoint: shape mismatch");
  ComplexTensor back = ifftn(conj(eigenvalues_) * fftn(y));
  check_imaginary_residue(back, y);
  return real(back);
}

Tensor BlurSpectrum::naive_inverse(const Tensor& y, double floor) const {
  if (y.dims() != dims()) throw ShapeError("naive_inverse: shape mismatch");
  if (!(floor >= 0.0)) throw ParamError("naive_inverse: floor must be >= 0");
  ComplexTensor yf = fftn(y);
  for (std::size_t i = 0; i < yf.size(); ++i) {
    const double mag = std::abs(eigenvalues_[i]);
    if (mag < floor) {
      yf[i] = 0.0;
    } else if (mag == 0.0) {
      throw NumericError("naive_inverse: zero eigenvalue with zero floor");
    } else {
      yf[i] /= eigenvalues_[i];
    }
  }
  return real(ifftn(yf));
}

}  // namespace ttv

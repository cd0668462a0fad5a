#pragma once

#include <string>

#include "ttv/tensor.hpp"

namespace ttv {

/// Point spread function: a kernel tensor plus the index of its center.
/// Kernels of lower order than the image are padded with trailing
/// singleton modes when the spectrum is built.
struct Psf {
  Tensor kernel;
  Dims center;           // 0-based, within the kernel extents
  bool normalized = false;
  std::string description;

  void validate() const;
};

/// Isotropic Gaussian sampled on the integer grid around the center
/// ceil((s+1)/2) (1-based) of each mode, then normalized to sum 1.
Psf gaussian_psf(const Dims& size, double sigma);

/// Kernel loaded from elsewhere; center defaults to the geometric center.
Psf psf_from_kernel(Tensor kernel, std::string description = "kernel");

/**
 * Eigenvalue tensor of the circulant (periodic-boundary) convolution
 * operator defined by a PSF: the kernel is embedded into the image extents,
 * circularly rotated so its center sits at the origin, and transformed with
 * fftn. For a normalized nonnegative PSF the zero-frequency eigenvalue is 1
 * and dominates the spectrum.
 */
class BlurSpectrum {
 public:
  static BlurSpectrum from_psf(const Psf& psf, const Dims& dims);

  const Dims& dims() const { return eigenvalues_.dims(); }
  const ComplexTensor& eigenvalues() const { return eigenvalues_; }
  double max_abs_eigenvalue() const { return max_abs_; }
  const std::string& source() const { return source_; }

  /// Forward blur: real part of ifftn(eigenvalues .* fftn(x)).
  Tensor apply(const Tensor& x) const;

  /// Adjoint blur, realized with conjugated eigenvalues; satisfies
  /// inner(apply(x), y) == inner(x, apply_adjoint(y)).
  Tensor apply_adjoint(const Tensor& y) const;

  /// Direct spectral inversion, zeroing frequencies whose eigenvalue
  /// magnitude falls below `floor`. Amplifies noise without bound as
  /// eigenvalues approach zero; kept for demonstration only.
  Tensor naive_inverse(const Tensor& y, double floor) const;

 private:
  ComplexTensor eigenvalues_;
  double max_abs_ = 0.0;
  std::string source_;
};

inline BlurSpectrum spectrum(const Psf& psf, const Dims& dims) {
  return BlurSpectrum::from_psf(psf, dims);
}

}  // namespace ttv

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "ttv/errors.hpp"

namespace ttv {

using Dims = std::vector<std::size_t>;

std::size_t dims_product(std::span<const std::size_t> dims);

/// Dense real tensor of arbitrary order, values contiguous in C-order (last
/// index varies fastest). Extent-0 modes are permitted so that
/// difference-shaped tensors of degenerate (extent-1) inputs stay
/// representable; the IO layer only ever produces extents >= 1.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Dims dims);  // zero-filled
  Tensor(Dims dims, std::vector<double> values);

  static Tensor constant(Dims dims, double value);

  const Dims& dims() const { return dims_; }
  std::size_t order() const { return dims_.size(); }
  std::size_t size() const { return data_.size(); }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  double operator[](std::size_t i) const { return data_[i]; }
  double& operator[](std::size_t i) { return data_[i]; }

  /// Linear offset of a multi-index (no bounds check on the index values).
  std::size_t offset(std::span<const std::size_t> idx) const;
  double at(std::span<const std::size_t> idx) const { return data_[offset(idx)]; }
  double& at(std::span<const std::size_t> idx) { return data_[offset(idx)]; }
  double at(std::initializer_list<std::size_t> idx) const;
  double& at(std::initializer_list<std::size_t> idx);

  bool same_dims(const Tensor& other) const { return dims_ == other.dims_; }
  bool all_finite() const;

  Tensor& operator+=(const Tensor& rhs);
  Tensor& operator-=(const Tensor& rhs);
  Tensor& operator*=(double s);

 private:
  Dims dims_;
  std::vector<double> data_;
};

/// Dense complex tensor with the same layout rules as Tensor.
class ComplexTensor {
 public:
  ComplexTensor() = default;
  explicit ComplexTensor(Dims dims);  // zero-filled
  ComplexTensor(Dims dims, std::vector<std::complex<double>> values);

  const Dims& dims() const { return dims_; }
  std::size_t order() const { return dims_.size(); }
  std::size_t size() const { return data_.size(); }

  std::complex<double>* data() { return data_.data(); }
  const std::complex<double>* data() const { return data_.data(); }

  std::complex<double> operator[](std::size_t i) const { return data_[i]; }
  std::complex<double>& operator[](std::size_t i) { return data_[i]; }

  bool same_dims(const ComplexTensor& other) const { return dims_ == other.dims_; }

  ComplexTensor& operator*=(const ComplexTensor& rhs);  // elementwise

 private:
  Dims dims_;
  std::vector<std::complex<double>> data_;
};

// sum over all entries of a.*b; shapes must match
double inner(const Tensor& a, const Tensor& b);
double frobenius_norm(const Tensor& a);

// Elementwise arithmetic. Shapes must match; operator/ rejects any zero
// divisor entry with NumericError instead of producing Inf.
Tensor operator+(const Tensor& a, const Tensor& b);
Tensor operator-(const Tensor& a, const Tensor& b);
Tensor operator*(const Tensor& a, const Tensor& b);
Tensor operator/(const Tensor& a, const Tensor& b);
Tensor operator*(double s, const Tensor& a);
Tensor operator*(const Tensor& a, double s);

ComplexTensor operator*(const ComplexTensor& a, const ComplexTensor& b);
ComplexTensor conj(const ComplexTensor& a);
Tensor real(const ComplexTensor& a);
double max_abs_imag(const ComplexTensor& a);

}  // namespace ttv

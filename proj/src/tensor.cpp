#include "ttv/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ttv {

namespace {

void require_same_dims(const Dims& a, const Dims& b, const char* op) {
  if (a != b) {
    throw ShapeError(std::string(op) + ": operand shapes differ");
  }
}

}  // namespace

std::size_t dims_product(std::span<const std::size_t> dims) {
  std::size_t p = 1;
  for (auto d : dims) p *= d;
  return p;
}

Tensor::Tensor(Dims dims) : dims_(std::move(dims)), data_(dims_product(dims_), 0.0) {}

Tensor::Tensor(Dims dims, std::vector<double> values)
    : dims_(std::move(dims)), data_(std::move(values)) {
  if (dims_product(dims_) != data_.size()) {
    throw ShapeError("Tensor: value count does not match extents");
  }
}

Tensor Tensor::constant(Dims dims, double value) {
  Tensor t(std::move(dims));
  std::fill(t.data_.begin(), t.data_.end(), value);
  return t;
}

std::size_t Tensor::offset(std::span<const std::size_t> idx) const {
  std::size_t off = 0;
  for (std::size_t m = 0; m < dims_.size(); ++m) {
    off = off * dims_[m] + idx[m];
  }
  return off;
}

double Tensor::at(std::initializer_list<std::size_t> idx) const {
  return at(std::span<const std::size_t>(idx.begin(), idx.size()));
}

double& Tensor::at(std::initializer_list<std::size_t> idx) {
  return at(std::span<const std::size_t>(idx.begin(), idx.size()));
}

bool Tensor::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

Tensor& Tensor::operator+=(const Tensor& rhs) {
  require_same_dims(dims_, rhs.dims_, "+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& rhs) {
  require_same_dims(dims_, rhs.dims_, "-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

Tensor& Tensor::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

ComplexTensor::ComplexTensor(Dims dims)
    : dims_(std::move(dims)), data_(dims_product(dims_), std::complex<double>(0.0, 0.0)) {}

ComplexTensor::ComplexTensor(Dims dims, std::vector<std::complex<double>> values)
    : dims_(std::move(dims)), data_(std::move(values)) {
  if (dims_product(dims_) != data_.size()) {
    throw ShapeError("ComplexTensor: value count does not match extents");
  }
}

ComplexTensor& ComplexTensor::operator*=(const ComplexTensor& rhs) {
  require_same_dims(dims_, rhs.dims_, "*=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] *= rhs.data_[i];
  return *this;
}

double inner(const Tensor& a, const Tensor& b) {
  require_same_dims(a.dims(), b.dims(), "inner");
  double s = 0.0;
  const double* pa = a.data();
  const double* pb = b.data();
  for (std::size_t i = 0; i < a.size(); ++i) s += pa[i] * pb[i];
  return s;
}

double frobenius_norm(const Tensor& a) { return std::sqrt(inner(a, a)); }

Tensor operator+(const Tensor& a, const Tensor& b) {
  Tensor out = a;
  out += b;
  return out;
}

Tensor operator-(const Tensor& a, const Tensor& b) {
  Tensor out = a;
  out -= b;
  return out;
}

Tensor operator*(const Tensor& a, const Tensor& b) {
  require_same_dims(a.dims(), b.dims(), "*");
  Tensor out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= b[i];
  return out;
}

Tensor operator/(const Tensor& a, const Tensor& b) {
  require_same_dims(a.dims(), b.dims(), "/");
  Tensor out = a;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (b[i] == 0.0) throw NumericError("/: division by zero entry");
    out[i] /= b[i];
  }
  return out;
}

Tensor operator*(double s, const Tensor& a) {
  Tensor out = a;
  out *= s;
  return out;
}

Tensor operator*(const Tensor& a, double s) { return s * a; }

ComplexTensor operator*(const ComplexTensor& a, const ComplexTensor& b) {
  ComplexTensor out = a;
  out *= b;
  return out;
}

ComplexTensor conj(const ComplexTensor& a) {
  ComplexTensor out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::conj(out[i]);
  return out;
}

Tensor real(const ComplexTensor& a) {
  Tensor out(a.dims());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i].real();
  return out;
}

double max_abs_imag(const ComplexTensor& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i].imag()));
  return m;
}

}  // namespace ttv

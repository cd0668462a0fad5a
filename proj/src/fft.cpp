#include "ttv/fft.hpp"

#include <fftw3.h>

#include <limits>
#include <mutex>

namespace ttv {

namespace {

// FFTW's planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

ComplexTensor transform(const ComplexTensor& a, int sign) {
  ComplexTensor out(a.dims());
  if (a.size() == 0) return out;

  std::vector<int> extents;
  extents.reserve(a.order());
  for (auto d : a.dims()) {
    if (d > static_cast<std::size_t>(std::numeric_limits<int>::max())) {
      throw ParamError("fftn: extent too large");
    }
    extents.push_back(static_cast<int>(d));
  }

  // FFTW_ESTIMATE never touches the arrays during planning, so the input
  // stays intact and plans are reproducible run to run.
  auto* in = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(a.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft(static_cast<int>(extents.size()), extents.data(), in, dst, sign,
                         FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
  }
  if (plan == nullptr) throw NumericError("fftn: planner failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace

ComplexTensor fftn(const Tensor& a) {
  ComplexTensor promoted(a.dims());
  for (std::size_t i = 0; i < a.size(); ++i) promoted[i] = std::complex<double>(a[i], 0.0);
  return transform(promoted, FFTW_FORWARD);
}

ComplexTensor fftn(const ComplexTensor& a) { return transform(a, FFTW_FORWARD); }

ComplexTensor ifftn(const ComplexTensor& a) {
  ComplexTensor out = transform(a, FFTW_BACKWARD);
  if (out.size() == 0) return out;
  const double scale = 1.0 / static_cast<double>(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= scale;
  return out;
}

}  // namespace ttv

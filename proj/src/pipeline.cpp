#include <cmath>
#include <limits>
#include <random>

#include "ttv/metrics.hpp"
#include "ttv/noise.hpp"

namespace ttv {

Tensor add_noise(const Tensor& t, const NoiseSpec& noise) {
  if (!(noise.std >= 0.0)) throw ParamError("add_noise: std must be >= 0");
  if (noise.std == 0.0) return t;
  std::mt19937_64 rng(noise.seed);
  std::normal_distribution<double> gauss(0.0, noise.std);
  Tensor out = t;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += gauss(rng);
  return out;
}

double psnr(const Tensor& x, const Tensor& ref, double peak) {
  if (!x.same_dims(ref)) throw ShapeError("psnr: shape mismatch");
  if (!(peak > 0.0)) throw ParamError("psnr: peak must be > 0");
  const Tensor r = x - ref;
  const double mse = inner(r, r) / static_cast<double>(x.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / mse);
}

}  // namespace ttv

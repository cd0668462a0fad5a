#include "ttv/deblur.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <utility>

namespace ttv {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

void DeblurConfig::validate() const {
  inner.validate();
  if (outer_max_iters < 1) throw ParamError("DeblurConfig: outer_max_iters must be >= 1");
  if (manual_lipschitz && !(*manual_lipschitz > 0.0)) {
    throw ParamError("DeblurConfig: manual Lipschitz constant must be > 0");
  }
}

double data_lipschitz(const BlurSpectrum& b) {
  const double m = b.max_abs_eigenvalue();
  return 2.0 * m * m;
}

DeblurResult deblur(const Tensor& s, const BlurSpectrum& b, const DeblurConfig& cfg) {
  cfg.validate();
  if (s.dims() != b.dims()) throw ShapeError("deblur: input does not match blur spectrum");
  if (!s.all_finite()) throw NumericError("deblur: input contains NaN or Inf");
  const auto t0 = std::chrono::steady_clock::now();

  const double L = cfg.manual_lipschitz ? *cfg.manual_lipschitz : data_lipschitz(b);
  if (!(L > 0.0)) throw ParamError("deblur: Lipschitz constant must be > 0 (zero spectrum?)");
  const double lambda = cfg.inner.lambda;

  SolverConfig prox_cfg = cfg.inner;
  prox_cfg.lambda = 2.0 * lambda / L;  // exact proximal weight at step 1/L

  const auto objective = [&](const Tensor& x) {
    const Tensor r = b.apply(x) - s;
    return inner(r, r) + 2.0 * lambda * tv(x, cfg.inner.flavor);
  };

  Tensor x_prev = project_constraint(s, cfg.inner.constraint);
  Tensor y = x_prev;
  DualVars duals = DualVars::zeros(s.dims());
  double t_k = 1.0;
  double obj_prev = objective(x_prev);

  DeblurResult res;
  SolveReport& report = res.report;
  report.trace.reserve(cfg.outer_max_iters);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  for (std::size_t n = 1; n <= cfg.outer_max_iters; ++n) {
    const Tensor grad_point = y - (2.0 / L) * b.apply_adjoint(b.apply(y) - s);
    DenoiseResult prox = denoise(grad_point, prox_cfg, duals);
    duals = std::move(prox.duals);  // warm start for the next outer iteration
    Tensor z = std::move(prox.restored);

    const double t_next = (1.0 + std::sqrt(1.0 + 4.0 * t_k * t_k)) / 2.0;
    Tensor x;
    double obj;
    if (cfg.algo == OuterAlgo::Fista) {
      y = z + ((t_k - 1.0) / t_next) * (z - x_prev);
      x = std::move(z);
      obj = objective(x);
    } else {
      const double obj_z = objective(z);
      if (obj_z <= obj_prev) {
        x = z;
        obj = obj_z;
      } else {
        x = x_prev;
        obj = obj_prev;
      }
      y = x + (t_k / t_next) * (z - x) + ((t_k - 1.0) / t_next) * (x - x_prev);
    }
    t_k = t_next;

    const double rel = frobenius_norm(x - x_prev) / std::max(frobenius_norm(x_prev), 1e-12);
    report.trace.push_back({nan, obj, rel});
    report.iterations = n;
    report.final_rel_change = rel;
    x_prev = std::move(x);
    obj_prev = obj;
  }

  res.restored = std::move(x_prev);
  report.wall_seconds = seconds_since(t0);
  return res;
}

}  // namespace ttv

#include "ttv/denoise.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <utility>

namespace ttv {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double primal_objective(const Tensor& x, const Tensor& s, const SolverConfig& cfg) {
  const Tensor r = x - s;
  return inner(r, r) + 2.0 * cfg.lambda * tv(x, cfg.flavor);
}

double rel_change(const Tensor& x, const Tensor& x_prev) {
  return frobenius_norm(x - x_prev) / std::max(frobenius_norm(x_prev), 1e-12);
}

// Primal iterate and dual objective implied by a set of duals; shares the
// single div() evaluation both need.
struct DualEval {
  Tensor x;
  double objective;
};

DualEval evaluate_duals(const DualVars& d, const Tensor& s, const SolverConfig& cfg) {
  const Tensor shifted = s - cfg.lambda * div(d);
  Tensor x = project_constraint(shifted, cfg.constraint);
  const Tensor residual = shifted - x;
  const double obj = inner(shifted, shifted) - inner(residual, residual);
  return {std::move(x), obj};
}

}  // namespace

ConstraintSet ConstraintSet::box(double lo, double hi) {
  if (!(lo < hi)) throw ParamError("ConstraintSet: box requires lo < hi");
  ConstraintSet c;
  c.kind = Kind::Box;
  c.lo = lo;
  c.hi = hi;
  return c;
}

void SolverConfig::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw ParamError("SolverConfig: lambda must be finite and >= 0");
  }
  if (max_iters < 1) throw ParamError("SolverConfig: max_iters must be >= 1");
  if (!(tol >= 0.0)) throw ParamError("SolverConfig: tol must be >= 0");
  if (constraint.kind == ConstraintSet::Kind::Box && !(constraint.lo < constraint.hi)) {
    throw ParamError("SolverConfig: box constraint requires lo < hi");
  }
}

Tensor project_constraint(Tensor t, const ConstraintSet& c) {
  if (c.kind == ConstraintSet::Kind::Box) {
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = std::clamp(t[i], c.lo, c.hi);
  }
  return t;
}

double dual_objective(const DualVars& d, const Tensor& s, const SolverConfig& cfg) {
  if (d.primal_dims() != s.dims()) throw ShapeError("dual_objective: dual shape mismatch");
  return evaluate_duals(d, s, cfg).objective;
}

DenoiseResult denoise(const Tensor& s, const SolverConfig& cfg) {
  return denoise(s, cfg, DualVars::zeros(s.dims()));
}

DenoiseResult denoise(const Tensor& s, const SolverConfig& cfg, const DualVars& warm_start) {
  cfg.validate();
  if (!s.all_finite()) throw NumericError("denoise: input contains NaN or Inf");
  const auto t0 = std::chrono::steady_clock::now();

  DenoiseResult res;
  if (cfg.lambda == 0.0) {
    res.restored = project_constraint(s, cfg.constraint);
    res.duals = DualVars::zeros(s.dims());
    res.report.wall_seconds = seconds_since(t0);
    return res;
  }

  if (warm_start.primal_dims() != s.dims()) {
    throw ShapeError("denoise: warm-start duals do not match the input shape");
  }
  const double lambda = cfg.lambda;
  const double step = 1.0 / (4.0 * static_cast<double>(s.order()) * lambda);

  DualVars d_prev = project_dual(warm_start, cfg.flavor);
  DualVars y = d_prev;
  double t_k = 1.0;
  DualEval prev = evaluate_duals(d_prev, s, cfg);

  SolveReport& report = res.report;
  report.trace.reserve(cfg.max_iters);

  for (std::size_t k = 1; k <= cfg.max_iters; ++k) {
    const Tensor inner_primal = project_constraint(s - lambda * div(y), cfg.constraint);
    DualVars cand = project_dual(y + step * grad(inner_primal), cfg.flavor);

    const double t_next = (1.0 + std::sqrt(1.0 + 4.0 * t_k * t_k)) / 2.0;
    DualVars d_acc;
    DualEval acc;
    bool accepted = true;
    switch (cfg.algo) {
      case Algo::Ista:
        acc = evaluate_duals(cand, s, cfg);
        d_acc = std::move(cand);
        y = d_acc;
        break;
      case Algo::Fista:
        acc = evaluate_duals(cand, s, cfg);
        y = cand + ((t_k - 1.0) / t_next) * (cand - d_prev);
        d_acc = std::move(cand);
        break;
      case Algo::Mfista: {
        // Keep the candidate only if it does not increase the tracked dual
        // objective; ties keep the candidate.
        DualEval cand_eval = evaluate_duals(cand, s, cfg);
        if (cand_eval.objective <= prev.objective) {
          d_acc = cand;
          acc = std::move(cand_eval);
        } else {
          d_acc = d_prev;
          acc = prev;
          accepted = false;
        }
        y = d_acc + (t_k / t_next) * (cand - d_acc) + ((t_k - 1.0) / t_next) * (d_acc - d_prev);
        break;
      }
    }
    t_k = t_next;

    const double rel = rel_change(acc.x, prev.x);
    report.trace.push_back({acc.objective, primal_objective(acc.x, s, cfg), rel});
    report.iterations = k;
    report.final_rel_change = rel;
    d_prev = std::move(d_acc);
    prev = std::move(acc);
    // A rejected safeguard step leaves the iterate in place; that is not
    // convergence, so only accepted steps can satisfy the tolerance.
    if (cfg.tol > 0.0 && rel < cfg.tol && accepted) break;
  }

  res.restored = std::move(prev.x);
  res.duals = std::move(d_prev);
  report.wall_seconds = seconds_since(t0);
  return res;
}

}  // namespace ttv

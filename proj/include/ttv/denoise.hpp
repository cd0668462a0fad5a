#pragma once

#include <cstddef>
#include <vector>

#include "ttv/tensor.hpp"
#include "ttv/tv.hpp"

namespace ttv {

/// Feasible set C of the restoration problems.
struct ConstraintSet {
  enum class Kind { Unconstrained, Box };

  Kind kind = Kind::Unconstrained;
  double lo = 0.0;
  double hi = 1.0;

  static ConstraintSet unconstrained() { return {}; }
  static ConstraintSet box(double lo, double hi);
};

enum class Algo { Ista, Fista, Mfista };

struct SolverConfig {
  double lambda = 0.1;  // regularization weight; 0 short-circuits to P_C(s)
  TvFlavor flavor = TvFlavor::Iso;
  ConstraintSet constraint;
  std::size_t max_iters = 200;
  double tol = 1e-6;  // relative Frobenius change of the primal iterate
  Algo algo = Algo::Fista;

  void validate() const;
};

struct IterRecord {
  double dual_objective;
  double primal_objective;
  double rel_change;
};

struct SolveReport {
  std::size_t iterations = 0;
  std::vector<IterRecord> trace;  // one record per iteration run
  double final_rel_change = 0.0;
  double wall_seconds = 0.0;
};

struct DenoiseResult {
  Tensor restored;
  SolveReport report;
  DualVars duals;  // final dual variables, reusable as a warm start
};

/// Orthogonal projection onto C: identity when unconstrained, entrywise
/// clamp for a box. Idempotent and nonexpansive.
Tensor project_constraint(Tensor t, const ConstraintSet& c);

/// Dual objective d(p) = -|H_C(s - lambda*div(p))|_F^2 + |s - lambda*div(p)|_F^2
/// with H_C(x) = x - P_C(x). Minimizing d over the feasible duals solves the
/// denoising problem; the primal is recovered as P_C(s - lambda*div(p)).
double dual_objective(const DualVars& d, const Tensor& s, const SolverConfig& cfg);

/**
 * Solve min_{t in C} |t - s|_F^2 + 2*lambda*TV(t) by projected gradient on
 * the dual with the step 1/(4*N*lambda) for an order-N tensor (the gradient
 * of the dual objective is 8*N*lambda^2-Lipschitz).
 *
 * Acceleration per cfg.algo: Ista takes plain projected steps, Fista adds
 * Nesterov extrapolation with the t-sequence t' = (1 + sqrt(1+4t^2))/2, and
 * Mfista additionally rejects any candidate that would increase the dual
 * objective, making the recorded objective trace non-increasing.
 *
 * Stops after cfg.max_iters iterations or when the relative Frobenius change
 * of the primal iterate drops below cfg.tol. A warm start seeds the dual
 * variables (projected onto the feasible set first).
 */
DenoiseResult denoise(const Tensor& s, const SolverConfig& cfg);
DenoiseResult denoise(const Tensor& s, const SolverConfig& cfg, const DualVars& warm_start);

}  // namespace ttv

#pragma once

#include <optional>

#include "ttv/blur.hpp"
#include "ttv/denoise.hpp"

namespace ttv {

enum class OuterAlgo { Fista, Mfista };

struct DeblurConfig {
  /// Inner denoiser settings. inner.lambda is the regularization weight of
  /// the deblurring objective itself; the proximal subproblems are invoked
  /// with the rescaled weight internally.
  SolverConfig inner;
  std::size_t outer_max_iters = 100;
  OuterAlgo algo = OuterAlgo::Fista;
  /// Lipschitz constant of the data-term gradient; unset means derive it
  /// from the blur spectrum.
  std::optional<double> manual_lipschitz;

  void validate() const;
};

/// Lipschitz constant of the gradient of |A(x) - s|_F^2 under the spectral
/// diagonalization: 2 * max|eigenvalue|^2.
double data_lipschitz(const BlurSpectrum& b);

struct DeblurResult {
  Tensor restored;
  SolveReport report;  // trace carries the full objective in primal_objective
};

/**
 * Solve min_{t in C} |A(t) - s|_F^2 + 2*lambda*TV(t) by accelerated proximal
 * gradient on the data term: each outer iteration takes the gradient step
 * g = y - (2/L) * A^T(A(y) - s) and then runs the TV denoiser on g with
 * weight 2*lambda/L, which is the exact proximal subproblem at step 1/L.
 * The inner denoiser warm-starts from the previous iteration's duals.
 *
 * OuterAlgo::Fista extrapolates with the standard t-sequence;
 * OuterAlgo::Mfista additionally rejects candidates that would increase the
 * objective |A(x)-s|_F^2 + 2*lambda*TV(x), so its trace is non-increasing.
 */
DeblurResult deblur(const Tensor& s, const BlurSpectrum& b, const DeblurConfig& cfg);

}  // namespace ttv

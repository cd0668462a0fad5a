#pragma once

#include "ttv/tensor.hpp"

namespace ttv {

enum class TvFlavor { Iso, Aniso };

/// Dual variable of the TV problem: one difference-shaped tensor per mode.
/// Part m has the primal extents with mode m shortened by one, so for a
/// third-order m x n x o primal the parts are (m-1) x n x o, m x (n-1) x o
/// and m x n x (o-1). Modes of extent 1 yield empty parts.
struct DualVars {
  std::vector<Tensor> parts;

  static Dims part_dims(std::span<const std::size_t> primal, std::size_t mode);
  static DualVars zeros(std::span<const std::size_t> primal);

  /// Primal extents these duals correspond to. Throws ShapeError if the
  /// parts are mutually inconsistent.
  Dims primal_dims() const;

  double frobenius_norm() const;

  DualVars& operator+=(const DualVars& rhs);
  DualVars& operator-=(const DualVars& rhs);
  DualVars& operator*=(double s);
};

DualVars operator+(const DualVars& a, const DualVars& b);
DualVars operator-(const DualVars& a, const DualVars& b);
DualVars operator*(double s, const DualVars& a);

/**
 * Discrete total variation of a tensor.
 *
 * Aniso sums |t(i) - t(i+e_m)| over every mode m and every position where
 * the forward difference exists. Iso sums, over every voxel, the Euclidean
 * norm of the vector of co-located forward differences, with differences
 * that fall off the end of a mode contributing zero; this full-coverage rule
 * makes tv() and project_dual() exact duals of each other at the boundary.
 */
double tv(const Tensor& t, TvFlavor flavor);

/// Divergence-like assembly of dual parts into a primal-shaped tensor:
/// out(i) = sum_m [ d_m(i) - d_m(i - e_m) ], with out-of-range dual entries
/// read as zero. Adjoint of grad: <div(d), t> == sum_m <d_m, grad(t)_m>.
Tensor div(const DualVars& d);

/// Per-mode forward differences: part m holds t(i) - t(i + e_m).
DualVars grad(const Tensor& t);

/// Projection onto the dual feasible set. Aniso clamps every entry to
/// [-1, 1]; Iso rescales the co-located dual vector at each voxel onto the
/// unit ball (absent entries count as zero). Idempotent and nonexpansive.
DualVars project_dual(DualVars d, TvFlavor flavor);

}  // namespace ttv

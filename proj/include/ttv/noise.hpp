#pragma once

#include <cstdint>

#include "ttv/tensor.hpp"

namespace ttv {

struct NoiseSpec {
  double std = 0.0;  // Gaussian standard deviation, >= 0
  std::uint64_t seed = 0;
};

/// Add seeded Gaussian noise. Deterministic for a fixed seed; the result is
/// not clamped (range constraints belong to the solvers).
Tensor add_noise(const Tensor& t, const NoiseSpec& noise);

}  // namespace ttv

#include "ttv/tv.hpp"

#include <algorithm>
#include <cmath>

namespace ttv {

namespace {

// View of the index space around one mode: size == outer * len * inner,
// where inner is the C-order stride of the mode.
struct ModeSpan {
  std::size_t outer;
  std::size_t len;
  std::size_t inner;
};

ModeSpan mode_span(const Dims& dims, std::size_t mode) {
  ModeSpan s{1, dims[mode], 1};
  for (std::size_t m = 0; m < mode; ++m) s.outer *= dims[m];
  for (std::size_t m = mode + 1; m < dims.size(); ++m) s.inner *= dims[m];
  return s;
}

void require_parts_consistent(const DualVars& d) {
  (void)d.primal_dims();  // throws on inconsistency
}

}  // namespace

Dims DualVars::part_dims(std::span<const std::size_t> primal, std::size_t mode) {
  Dims dims(primal.begin(), primal.end());
  if (dims[mode] == 0) throw ShapeError("DualVars: zero primal extent");
  dims[mode] -= 1;
  return dims;
}

DualVars DualVars::zeros(std::span<const std::size_t> primal) {
  DualVars d;
  d.parts.reserve(primal.size());
  for (std::size_t m = 0; m < primal.size(); ++m) {
    d.parts.emplace_back(part_dims(primal, m));
  }
  return d;
}

Dims DualVars::primal_dims() const {
  if (parts.empty()) throw ShapeError("DualVars: no parts");
  const std::size_t order = parts.size();
  Dims primal(order);
  for (std::size_t m = 0; m < order; ++m) {
    if (parts[m].order() != order) throw ShapeError("DualVars: part order mismatch");
    primal[m] = parts[m].dims()[m] + 1;
  }
  for (std::size_t m = 0; m < order; ++m) {
    if (parts[m].dims() != part_dims(primal, m)) {
      throw ShapeError("DualVars: parts disagree on primal extents");
    }
  }
  return primal;
}

double DualVars::frobenius_norm() const {
  double sq = 0.0;
  for (const Tensor& p : parts) sq += inner(p, p);
  return std::sqrt(sq);
}

DualVars& DualVars::operator+=(const DualVars& rhs) {
  if (parts.size() != rhs.parts.size()) throw ShapeError("DualVars: part count mismatch");
  for (std::size_t m = 0; m < parts.size(); ++m) parts[m] += rhs.parts[m];
  return *this;
}

DualVars& DualVars::operator-=(const DualVars& rhs) {
  if (parts.size() != rhs.parts.size()) throw ShapeError("DualVars: part count mismatch");
  for (std::size_t m = 0; m < parts.size(); ++m) parts[m] -= rhs.parts[m];
  return *this;
}

DualVars& DualVars::operator*=(double s) {
  for (Tensor& p : parts) p *= s;
  return *this;
}

DualVars operator+(const DualVars& a, const DualVars& b) {
  DualVars out = a;
  out += b;
  return out;
}

DualVars operator-(const DualVars& a, const DualVars& b) {
  DualVars out = a;
  out -= b;
  return out;
}

DualVars operator*(double s, const DualVars& a) {
  DualVars out = a;
  out *= s;
  return out;
}

double tv(const Tensor& t, TvFlavor flavor) {
  const Dims& dims = t.dims();
  if (flavor == TvFlavor::Aniso) {
    double total = 0.0;
    for (std::size_t m = 0; m < dims.size(); ++m) {
      const auto [outer, len, inner] = mode_span(dims, m);
      if (len < 2) continue;
      for (std::size_t o = 0; o < outer; ++o) {
        const double* block = t.data() + o * len * inner;
        for (std::size_t i = 0; i + 1 < len; ++i) {
          for (std::size_t in = 0; in < inner; ++in) {
            total += std::abs(block[i * inner + in] - block[(i + 1) * inner + in]);
          }
        }
      }
    }
    return total;
  }

  // Iso: accumulate squared differences per voxel, then sum the square roots.
  Tensor sq(dims);
  for (std::size_t m = 0; m < dims.size(); ++m) {
    const auto [outer, len, inner] = mode_span(dims, m);
    if (len < 2) continue;
    for (std::size_t o = 0; o < outer; ++o) {
      const double* block = t.data() + o * len * inner;
      double* acc = sq.data() + o * len * inner;
      for (std::size_t i = 0; i + 1 < len; ++i) {
        for (std::size_t in = 0; in < inner; ++in) {
          const double diff = block[i * inner + in] - block[(i + 1) * inner + in];
          acc[i * inner + in] += diff * diff;
        }
      }
    }
  }
  double total = 0.0;
  for (std::size_t i = 0; i < sq.size(); ++i) total += std::sqrt(sq[i]);
  return total;
}

Tensor div(const DualVars& d) {
  require_parts_consistent(d);
  const Dims primal = d.primal_dims();
  Tensor out(primal);
  for (std::size_t m = 0; m < primal.size(); ++m) {
    const auto [outer, len, inner] = mode_span(primal, m);
    if (len < 2) continue;
    for (std::size_t o = 0; o < outer; ++o) {
      const double* part = d.parts[m].data() + o * (len - 1) * inner;
      double* block = out.data() + o * len * inner;
      for (std::size_t i = 0; i < len; ++i) {
        for (std::size_t in = 0; in < inner; ++in) {
          double v = 0.0;
          if (i + 1 < len) v += part[i * inner + in];
          if (i > 0) v -= part[(i - 1) * inner + in];
          block[i * inner + in] += v;
        }
      }
    }
  }
  return out;
}

DualVars grad(const Tensor& t) {
  const Dims& dims = t.dims();
  DualVars d = DualVars::zeros(dims);
  for (std::size_t m = 0; m < dims.size(); ++m) {
    const auto [outer, len, inner] = mode_span(dims, m);
    if (len < 2) continue;
    for (std::size_t o = 0; o < outer; ++o) {
      const double* block = t.data() + o * len * inner;
      double* part = d.parts[m].data() + o * (len - 1) * inner;
      for (std::size_t i = 0; i + 1 < len; ++i) {
        for (std::size_t in = 0; in < inner; ++in) {
          part[i * inner + in] = block[i * inner + in] - block[(i + 1) * inner + in];
        }
      }
    }
  }
  return d;
}

DualVars project_dual(DualVars d, TvFlavor flavor) {
  require_parts_consistent(d);
  if (flavor == TvFlavor::Aniso) {
    for (Tensor& p : d.parts) {
      for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::clamp(p[i], -1.0, 1.0);
    }
    return d;
  }

  const Dims primal = d.primal_dims();
  Tensor sq(primal);
  for (std::size_t m = 0; m < primal.size(); ++m) {
    const auto [outer, len, inner] = mode_span(primal, m);
    if (len < 2) continue;
    for (std::size_t o = 0; o < outer; ++o) {
      const double* part = d.parts[m].data() + o * (len - 1) * inner;
      double* acc = sq.data() + o * len * inner;
      for (std::size_t i = 0; i + 1 < len; ++i) {
        for (std::size_t in = 0; in < inner; ++in) {
          const double v = part[i * inner + in];
          acc[i * inner + in] += v * v;
        }
      }
    }
  }
  // Per-voxel factor 1 / max(1, |co-located dual vector|).
  for (std::size_t i = 0; i < sq.size(); ++i) {
    const double norm = std::sqrt(sq[i]);
    sq[i] = norm > 1.0 ? 1.0 / norm : 1.0;
  }
  for (std::size_t m = 0; m < primal.size(); ++m) {
    const auto [outer, len, inner] = mode_span(primal, m);
    if (len < 2) continue;
    for (std::size_t o = 0; o < outer; ++o) {
      double* part = d.parts[m].data() + o * (len - 1) * inner;
      const double* factor = sq.data() + o * len * inner;
      for (std::size_t i = 0; i + 1 < len; ++i) {
        for (std::size_t in = 0; in < inner; ++in) {
          part[i * inner + in] *= factor[i * inner + in];
        }
      }
    }
  }
  return d;
}

}  // namespace ttv

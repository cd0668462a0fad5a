#pragma once

// Shared test utilities: deterministic random data, brute-force oracles kept
// independent of the library's solver paths, and helpers to drive the CLI.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "ttv/blur.hpp"
#include "ttv/tensor.hpp"
#include "ttv/tv.hpp"

namespace testsup {

inline ttv::Tensor random_tensor(ttv::Dims dims, std::uint64_t seed, double lo = -1.0,
                                 double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(lo, hi);
  ttv::Tensor t(std::move(dims));
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = uni(rng);
  return t;
}

inline ttv::DualVars random_duals(const ttv::Dims& primal, std::uint64_t seed, double lo = -1.0,
                                  double hi = 1.0) {
  ttv::DualVars d = ttv::DualVars::zeros(primal);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(lo, hi);
  for (ttv::Tensor& p : d.parts) {
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = uni(rng);
  }
  return d;
}

template <class F>
inline void for_each_index(const ttv::Dims& dims, F&& f) {
  ttv::Dims idx(dims.size(), 0);
  const std::size_t total = ttv::dims_product(dims);
  for (std::size_t lin = 0; lin < total; ++lin) {
    f(idx);
    for (std::size_t m = dims.size(); m-- > 0;) {
      if (++idx[m] < dims[m]) break;
      idx[m] = 0;
    }
  }
}

/// Direct periodic convolution: y(n) = sum_k kernel(k) * x((n - k + center) mod dims).
/// Triple-checked reference for the FFT path; O(size * kernel_size).
inline ttv::Tensor circular_convolve_direct(const ttv::Tensor& x, const ttv::Psf& psf) {
  const ttv::Dims& dims = x.dims();
  ttv::Tensor y(dims);
  for_each_index(dims, [&](const ttv::Dims& n) {
    double acc = 0.0;
    for_each_index(psf.kernel.dims(), [&](const ttv::Dims& k) {
      ttv::Dims src(dims.size());
      for (std::size_t m = 0; m < dims.size(); ++m) {
        std::size_t shift_back = 0;  // (k - center) mod extent
        if (m < k.size()) shift_back = (k[m] + dims[m] - psf.center[m] % dims[m]) % dims[m];
        src[m] = (n[m] + dims[m] - shift_back) % dims[m];
      }
      acc += psf.kernel.at(k) * x.at(src);
    });
    y.at(n) = acc;
  });
  return y;
}

/// Dense maximization of <t, div(d)> over every +-1 sign assignment of the
/// dual entries. The maximum of a linear functional over the box sits at a
/// vertex, so this enumerates the exact anisotropic dual value.
inline double max_inner_over_sign_duals(const ttv::Tensor& t) {
  ttv::DualVars d = ttv::DualVars::zeros(t.dims());
  std::size_t entries = 0;
  for (const ttv::Tensor& p : d.parts) entries += p.size();
  double best = -1e300;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << entries); ++mask) {
    std::size_t bit = 0;
    for (ttv::Tensor& p : d.parts) {
      for (std::size_t i = 0; i < p.size(); ++i, ++bit) {
        p[i] = (mask >> bit) & 1 ? 1.0 : -1.0;
      }
    }
    best = std::max(best, ttv::inner(t, ttv::div(d)));
  }
  return best;
}

/// Multi-resolution grid search for min |t-s|^2 + 2*lambda*sum|t_{i+1}-t_i|
/// over 1-D signals of up to a few entries. Accurate to ~1e-4 per entry.
inline std::vector<double> grid_search_tv1d(const std::vector<double>& s, double lambda) {
  const std::size_t n = s.size();
  const auto objective = [&](const std::vector<double>& t) {
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) v += (t[i] - s[i]) * (t[i] - s[i]);
    for (std::size_t i = 0; i + 1 < n; ++i) v += 2.0 * lambda * std::abs(t[i + 1] - t[i]);
    return v;
  };

  double lo = s[0], hi = s[0];
  for (double v : s) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  lo -= 0.5;
  hi += 0.5;

  std::vector<double> best(n, (lo + hi) / 2);
  std::vector<double> center = best;
  double radius = (hi - lo) / 2;
  for (int level = 0; level < 4; ++level) {
    const int steps = 40;
    const double step = radius / steps;
    std::vector<double> t(n), local_best = best;
    double best_obj = objective(best);
    std::vector<int> grid(n, -steps);
    while (true) {
      for (std::size_t i = 0; i < n; ++i) t[i] = center[i] + grid[i] * step;
      const double obj = objective(t);
      if (obj < best_obj) {
        best_obj = obj;
        local_best = t;
      }
      std::size_t m = 0;
      for (; m < n; ++m) {
        if (++grid[m] <= steps) break;
        grid[m] = -steps;
      }
      if (m == n) break;
    }
    best = local_best;
    center = best;
    radius = 3 * step;
  }
  return best;
}

/// Power-iteration estimate of |grad|^2 == largest eigenvalue of div(grad(.)).
inline double power_iteration_gradnorm(const ttv::Dims& dims, std::uint64_t seed,
                                       int iters = 200) {
  ttv::Tensor v = random_tensor(dims, seed);
  double est = 0.0;
  for (int k = 0; k < iters; ++k) {
    ttv::Tensor w = ttv::div(ttv::grad(v));
    est = ttv::inner(v, w) / ttv::inner(v, v);
    const double norm = ttv::frobenius_norm(w);
    if (norm == 0.0) return 0.0;
    v = (1.0 / norm) * w;
  }
  return est;
}

/// Photo-like RGB test image: smooth color gradients, mid-frequency texture
/// and two blocks with sharp edges. TV density is close to natural images,
/// which keeps useful regularization weights in the same range.
inline ttv::Tensor textured_image(std::size_t h, std::size_t w) {
  ttv::Tensor t({h, w, 3});
  const double pi = 3.14159265358979323846;
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const double fy = static_cast<double>(y) / h;
      const double fx = static_cast<double>(x) / w;
      for (std::size_t c = 0; c < 3; ++c) {
        double v = 0.5 + 0.2 * std::sin(2 * pi * (1.3 * fy + 0.6 * fx) + 1.1 * c);
        v += 0.1 * std::sin(2 * pi * 6 * fx + 0.7 * c) * std::cos(2 * pi * 5 * fy);
        if (y > h / 4 && y < h / 2 && x > w / 5 && x < w / 2) v += (c == 0 ? 0.22 : -0.12);
        if (y > 3 * h / 5 && x > 2 * w / 3) v += (c == 2 ? 0.2 : 0.08);
        t.at({y, x, c}) = std::min(0.97, std::max(0.03, v));
      }
    }
  }
  return t;
}

/// Piecewise-constant RGB test image: quadrants of distinct colors plus an
/// inset rectangle, strong edges everywhere.
inline ttv::Tensor piecewise_image(std::size_t h, std::size_t w) {
  ttv::Tensor t({h, w, 3});
  const double colors[5][3] = {
      {0.9, 0.1, 0.1}, {0.1, 0.8, 0.2}, {0.15, 0.2, 0.9}, {0.85, 0.8, 0.1}, {0.5, 0.5, 0.5}};
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      std::size_t region = (y < h / 2 ? 0 : 2) + (x < w / 2 ? 0 : 1);
      if (y > h / 3 && y < 2 * h / 3 && x > w / 3 && x < 2 * w / 3) region = 4;
      for (std::size_t c = 0; c < 3; ++c) t.at({y, x, c}) = colors[region][c];
    }
  }
  return t;
}

inline std::string cli_path() {
#ifdef TTV_CLI_PATH
  return TTV_CLI_PATH;
#else
  return "./ttv";
#endif
}

/// Runs the CLI with the given argument string; returns the exit code and
/// optionally captures stdout.
inline int run_cli(const std::string& args, std::string* out_text = nullptr) {
  const std::string out_file =
      (std::filesystem::temp_directory_path() / "ttv_cli_stdout.txt").string();
  const std::string cmd = cli_path() + " " + args + " > " + out_file + " 2>&1";
  const int status = std::system(cmd.c_str());
  if (out_text) {
    std::ifstream is(out_file);
    out_text->assign((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  }
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

inline std::vector<unsigned char> slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  return std::vector<unsigned char>((std::istreambuf_iterator<char>(is)),
                                    std::istreambuf_iterator<char>());
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    static std::uint64_t counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("ttv_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace testsup

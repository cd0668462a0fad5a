// Command-line front end: denoising, blur synthesis, deblurring, PSNR and
// format conversion over PNG images, PNG frame directories and .tns tensors.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ttv/deblur.hpp"
#include "ttv/denoise.hpp"
#include "ttv/io.hpp"
#include "ttv/metrics.hpp"
#include "ttv/noise.hpp"

namespace {

ttv::Dims parse_psf_size(const std::string& text) {
  ttv::Dims dims;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, 'x')) {
    std::size_t consumed = 0;
    long v = 0;
    try {
      v = std::stol(item, &consumed);
    } catch (const std::exception&) {
      consumed = 0;
    }
    if (consumed != item.size() || v < 1) {
      throw ttv::ParamError("--psf-size: bad extent '" + item + "', expected S1xS2x...");
    }
    dims.push_back(static_cast<std::size_t>(v));
  }
  if (dims.empty()) throw ttv::ParamError("--psf-size: expected S1xS2x...");
  return dims;
}

std::optional<ttv::MediaKind> parse_mapping(const std::string& text) {
  if (text.empty() || text == "auto") return std::nullopt;
  if (text == "color-image") return ttv::MediaKind::ColorImage;
  if (text == "gray-video") return ttv::MediaKind::GrayVideo;
  if (text == "color-video") return ttv::MediaKind::ColorVideo;
  throw ttv::ParamError("--mapping: unknown value '" + text + "'");
}

ttv::TvFlavor parse_tv(const std::string& text) {
  if (text == "iso") return ttv::TvFlavor::Iso;
  if (text == "aniso") return ttv::TvFlavor::Aniso;
  throw ttv::ParamError("--tv: unknown value '" + text + "'");
}

ttv::ConstraintSet parse_constraint(const std::string& text) {
  if (text == "box01") return ttv::ConstraintSet::box(0.0, 1.0);
  if (text == "none") return ttv::ConstraintSet::unconstrained();
  throw ttv::ParamError("--constraint: unknown value '" + text + "'");
}

ttv::Algo parse_algo(const std::string& text) {
  if (text == "ista") return ttv::Algo::Ista;
  if (text == "fista") return ttv::Algo::Fista;
  if (text == "mfista") return ttv::Algo::Mfista;
  throw ttv::ParamError("--algo: unknown value '" + text + "'");
}

ttv::OuterAlgo parse_outer_algo(const std::string& text) {
  if (text == "fista") return ttv::OuterAlgo::Fista;
  if (text == "mfista") return ttv::OuterAlgo::Mfista;
  throw ttv::ParamError("--algo: unknown value '" + text + "'");
}

void write_trace_csv(const std::string& path, const std::string& provenance,
                     const ttv::SolveReport& report) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw ttv::IoError("cannot open " + path + " for writing");
  os << "# " << provenance << "\n";
  os << "iter,dual_objective,primal_objective,rel_change\n";
  char line[160];
  for (std::size_t i = 0; i < report.trace.size(); ++i) {
    const auto& r = report.trace[i];
    std::snprintf(line, sizeof(line), "%zu,%.17g,%.17g,%.17g\n", i + 1, r.dual_objective,
                  r.primal_objective, r.rel_change);
    os << line;
  }
}

// Builds the PSF from --psf (a .tns kernel, centered geometrically) or from
// --psf-size/--sigma.
ttv::Psf make_psf(const std::string& psf_path, const std::string& psf_size, double sigma) {
  if (!psf_path.empty()) return ttv::psf_from_kernel(ttv::load_tns(psf_path), psf_path);
  if (psf_size.empty()) throw ttv::ParamError("--psf-size: required unless --psf is given");
  if (!(sigma > 0.0)) throw ttv::ParamError("--sigma: must be > 0");
  return ttv::gaussian_psf(parse_psf_size(psf_size), sigma);
}

struct DenoiseArgs {
  std::string input, output, tv = "iso", algo = "fista", constraint = "box01";
  std::string trace, mapping = "auto";
  double lambda = 0.1, tol = 1e-6;
  std::size_t iters = 200;
};

int run_denoise(const DenoiseArgs& a) {
  ttv::SolverConfig cfg;
  cfg.lambda = a.lambda;
  cfg.flavor = parse_tv(a.tv);
  cfg.algo = parse_algo(a.algo);
  cfg.constraint = parse_constraint(a.constraint);
  cfg.max_iters = a.iters;
  cfg.tol = a.tol;

  const ttv::Tensor input = ttv::load_media(a.input, parse_mapping(a.mapping));
  const auto result = ttv::denoise(input, cfg);
  ttv::save_media(result.restored, a.output, parse_mapping(a.mapping));

  std::ostringstream prov;
  prov << "denoise input=" << a.input << " output=" << a.output << " lambda=" << a.lambda
       << " tv=" << a.tv << " algo=" << a.algo << " iters=" << a.iters << " tol=" << a.tol
       << " constraint=" << a.constraint;
  std::printf("%s\n", prov.str().c_str());
  std::printf("iterations=%zu rel_change=%.3e wall=%.3fs\n", result.report.iterations,
              result.report.final_rel_change, result.report.wall_seconds);
  if (!a.trace.empty()) write_trace_csv(a.trace, prov.str(), result.report);
  return 0;
}

struct BlurArgs {
  std::string input, output, psf_size, psf, mapping = "auto";
  double sigma = 1.0, noise_std = 0.0;
  std::uint64_t seed = 0;
};

int run_blur(const BlurArgs& a) {
  const ttv::Tensor input = ttv::load_media(a.input, parse_mapping(a.mapping));
  const ttv::Psf psf = make_psf(a.psf, a.psf_size, a.sigma);
  const ttv::BlurSpectrum blur_op = ttv::spectrum(psf, input.dims());
  ttv::Tensor out = blur_op.apply(input);
  if (a.noise_std > 0.0) out = ttv::add_noise(out, {a.noise_std, a.seed});
  ttv::save_media(out, a.output, parse_mapping(a.mapping));
  std::printf("blur input=%s output=%s psf=%s noise-std=%g seed=%" PRIu64 "\n", a.input.c_str(),
              a.output.c_str(), blur_op.source().c_str(), a.noise_std, a.seed);
  return 0;
}

struct DeblurArgs {
  std::string input, output, psf_size, psf, tv = "iso", algo = "fista", constraint = "box01";
  std::string trace, mapping = "auto";
  double sigma = 1.0, lambda = 0.01, inner_tol = 0.0;
  std::size_t outer_iters = 100, inner_iters = 10;
};

int run_deblur(const DeblurArgs& a) {
  const ttv::Tensor input = ttv::load_media(a.input, parse_mapping(a.mapping));
  const ttv::Psf psf = make_psf(a.psf, a.psf_size, a.sigma);
  const ttv::BlurSpectrum blur_op = ttv::spectrum(psf, input.dims());

  ttv::DeblurConfig cfg;
  cfg.inner.lambda = a.lambda;
  cfg.inner.flavor = parse_tv(a.tv);
  cfg.inner.constraint = parse_constraint(a.constraint);
  cfg.inner.max_iters = a.inner_iters;
  cfg.inner.tol = a.inner_tol;
  cfg.outer_max_iters = a.outer_iters;
  cfg.algo = parse_outer_algo(a.algo);

  const auto result = ttv::deblur(input, blur_op, cfg);
  ttv::save_media(result.restored, a.output, parse_mapping(a.mapping));

  std::ostringstream prov;
  prov << "deblur input=" << a.input << " output=" << a.output << " psf=" << blur_op.source()
       << " lambda=" << a.lambda << " tv=" << a.tv << " algo=" << a.algo
       << " outer-iters=" << a.outer_iters << " inner-iters=" << a.inner_iters
       << " constraint=" << a.constraint;
  std::printf("%s\n", prov.str().c_str());
  std::printf("iterations=%zu objective=%.6g wall=%.3fs\n", result.report.iterations,
              result.report.trace.empty() ? 0.0 : result.report.trace.back().primal_objective,
              result.report.wall_seconds);
  if (!a.trace.empty()) write_trace_csv(a.trace, prov.str(), result.report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tensor total-variation restoration: denoise and deblur images and videos"};
  app.require_subcommand(1);

  DenoiseArgs dn;
  auto* den = app.add_subcommand("denoise", "TV-regularized denoising");
  den->add_option("--input", dn.input, "input image/video/.tns")->required();
  den->add_option("--output", dn.output, "output path")->required();
  den->add_option("--lambda", dn.lambda, "regularization weight")->required();
  den->add_option("--tv", dn.tv, "TV flavor: iso|aniso");
  den->add_option("--algo", dn.algo, "ista|fista|mfista");
  den->add_option("--iters", dn.iters, "max iterations");
  den->add_option("--tol", dn.tol, "relative-change stopping tolerance");
  den->add_option("--constraint", dn.constraint, "box01|none");
  den->add_option("--trace", dn.trace, "write per-iteration CSV trace");
  den->add_option("--mapping", dn.mapping, "auto|color-image|gray-video|color-video");

  BlurArgs bl;
  auto* blur = app.add_subcommand("blur", "apply periodic Gaussian blur (optionally + noise)");
  blur->add_option("--input", bl.input, "input image/video/.tns")->required();
  blur->add_option("--output", bl.output, "output path")->required();
  blur->add_option("--psf-size", bl.psf_size, "kernel extents, e.g. 7x7x3");
  blur->add_option("--sigma", bl.sigma, "Gaussian sigma");
  blur->add_option("--psf", bl.psf, "kernel from a .tns file instead");
  blur->add_option("--noise-std", bl.noise_std, "additive Gaussian noise std");
  blur->add_option("--seed", bl.seed, "noise seed");
  blur->add_option("--mapping", bl.mapping, "auto|color-image|gray-video|color-video");

  DeblurArgs db;
  auto* deb = app.add_subcommand("deblur", "TV-regularized deblurring");
  deb->add_option("--input", db.input, "blurred input image/video/.tns")->required();
  deb->add_option("--output", db.output, "output path")->required();
  deb->add_option("--psf-size", db.psf_size, "kernel extents, e.g. 7x7x3");
  deb->add_option("--sigma", db.sigma, "Gaussian sigma");
  deb->add_option("--psf", db.psf, "kernel from a .tns file instead");
  deb->add_option("--lambda", db.lambda, "regularization weight")->required();
  deb->add_option("--outer-iters", db.outer_iters, "outer iterations");
  deb->add_option("--inner-iters", db.inner_iters, "inner denoiser iterations");
  deb->add_option("--inner-tol", db.inner_tol, "inner stopping tolerance (0 = fixed count)");
  deb->add_option("--algo", db.algo, "fista|mfista");
  deb->add_option("--tv", db.tv, "TV flavor: iso|aniso");
  deb->add_option("--constraint", db.constraint, "box01|none");
  deb->add_option("--trace", db.trace, "write per-iteration CSV trace");
  deb->add_option("--mapping", db.mapping, "auto|color-image|gray-video|color-video");

  std::string psnr_a, psnr_b;
  double psnr_peak = 1.0;
  auto* ps = app.add_subcommand("psnr", "peak signal-to-noise ratio between two inputs");
  ps->add_option("--a", psnr_a, "first input")->required();
  ps->add_option("--b", psnr_b, "second input (reference)")->required();
  ps->add_option("--peak", psnr_peak, "peak signal value");

  std::string cv_in, cv_out, cv_mapping = "auto";
  auto* cv = app.add_subcommand("convert", "convert between PNG, frame dirs and .tns");
  cv->add_option("--input", cv_in, "input path")->required();
  cv->add_option("--output", cv_out, "output path")->required();
  cv->add_option("--mapping", cv_mapping, "auto|color-image|gray-video|color-video");

  CLI11_PARSE(app, argc, argv);

  try {
    if (den->parsed()) return run_denoise(dn);
    if (blur->parsed()) return run_blur(bl);
    if (deb->parsed()) return run_deblur(db);
    if (ps->parsed()) {
      const ttv::Tensor a = ttv::load_media(psnr_a);
      const ttv::Tensor b = ttv::load_media(psnr_b);
      const double value = ttv::psnr(a, b, psnr_peak);
      if (std::isinf(value)) {
        std::printf("inf\n");
      } else {
        std::printf("%.6f\n", value);
      }
      return 0;
    }
    if (cv->parsed()) {
      const auto mapping = parse_mapping(cv_mapping);
      ttv::save_media(ttv::load_media(cv_in, mapping), cv_out, mapping);
      std::printf("convert input=%s output=%s\n", cv_in.c_str(), cv_out.c_str());
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

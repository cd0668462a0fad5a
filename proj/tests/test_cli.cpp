#include <doctest.h>

#include <fstream>
#include <string>

#include "support.hpp"
#include "ttv/io.hpp"
#include "ttv/metrics.hpp"

using namespace ttv;

TEST_CASE("denoise with lambda zero passes the input through") {
  testsup::TempDir tmp;
  const std::string in = tmp.file("in.tns");
  const std::string out = tmp.file("out.tns");
  save_tns(testsup::piecewise_image(8, 8), in);

  const int rc = testsup::run_cli("denoise --input " + in + " --output " + out +
                                  " --lambda 0 --constraint none");
  REQUIRE(rc == 0);

  std::string text;
  const int prc = testsup::run_cli("psnr --a " + in + " --b " + out, &text);
  REQUIRE(prc == 0);
  CHECK(text.find("inf") != std::string::npos);
}

TEST_CASE("psnr of a file against itself prints inf") {
  testsup::TempDir tmp;
  const std::string in = tmp.file("x.tns");
  save_tns(testsup::random_tensor({4, 4, 3}, 3, 0.0, 1.0), in);
  std::string text;
  const int rc = testsup::run_cli("psnr --a " + in + " --b " + in, &text);
  REQUIRE(rc == 0);
  CHECK(text.find("inf") != std::string::npos);
}

TEST_CASE("blur then deblur improves psnr end to end") {
  testsup::TempDir tmp;
  const std::string clean = tmp.file("clean.tns");
  const std::string blurred = tmp.file("blurred.tns");
  const std::string restored = tmp.file("restored.tns");
  save_tns(testsup::textured_image(32, 32), clean);

  REQUIRE(testsup::run_cli("blur --input " + clean + " --output " + blurred +
                           " --psf-size 5x5x3 --sigma 1 --noise-std 0.1 --seed 7") == 0);
  REQUIRE(testsup::run_cli("deblur --input " + blurred + " --output " + restored +
                           " --psf-size 5x5x3 --sigma 1 --lambda 0.01 --outer-iters 40" +
                           " --inner-iters 10 --algo fista") == 0);

  std::string blurred_psnr, restored_psnr;
  REQUIRE(testsup::run_cli("psnr --a " + blurred + " --b " + clean, &blurred_psnr) == 0);
  REQUIRE(testsup::run_cli("psnr --a " + restored + " --b " + clean, &restored_psnr) == 0);
  CHECK(std::stod(restored_psnr) > std::stod(blurred_psnr));
}

TEST_CASE("identical seeded invocations are bit-identical") {
  testsup::TempDir tmp;
  const std::string in = tmp.file("in.tns");
  save_tns(testsup::piecewise_image(12, 12), in);

  const std::string cmd_tail = " --psf-size 3x3x1 --sigma 0.8 --noise-std 0.05 --seed 99";
  const std::string out1 = tmp.file("o1.tns");
  const std::string out2 = tmp.file("o2.tns");
  REQUIRE(testsup::run_cli("blur --input " + in + " --output " + out1 + cmd_tail) == 0);
  REQUIRE(testsup::run_cli("blur --input " + in + " --output " + out2 + cmd_tail) == 0);
  CHECK(testsup::slurp(out1) == testsup::slurp(out2));
}

TEST_CASE("trace csv carries provenance and the expected columns") {
  testsup::TempDir tmp;
  const std::string in = tmp.file("in.tns");
  const std::string out = tmp.file("out.tns");
  const std::string csv = tmp.file("trace.csv");
  save_tns(testsup::piecewise_image(8, 8), in);

  REQUIRE(testsup::run_cli("denoise --input " + in + " --output " + out +
                           " --lambda 0.1 --iters 15 --tol 0 --trace " + csv) == 0);

  std::ifstream is(csv);
  REQUIRE(is.good());
  std::string line1, line2, line3;
  std::getline(is, line1);
  std::getline(is, line2);
  std::getline(is, line3);
  CHECK(line1.find("# denoise") == 0);
  CHECK(line1.find("lambda=0.1") != std::string::npos);
  CHECK(line2 == "iter,dual_objective,primal_objective,rel_change");
  CHECK(line3.rfind("1,", 0) == 0);

  // same command, same trace bytes
  const auto bytes1 = testsup::slurp(csv);
  REQUIRE(testsup::run_cli("denoise --input " + in + " --output " + out +
                           " --lambda 0.1 --iters 15 --tol 0 --trace " + csv) == 0);
  CHECK(testsup::slurp(csv) == bytes1);
}

TEST_CASE("convert between png and tns") {
  testsup::TempDir tmp;
  const std::string tns = tmp.file("img.tns");
  const std::string png = tmp.file("img.png");
  const std::string back = tmp.file("back.tns");
  save_tns(testsup::piecewise_image(8, 8), tns);

  REQUIRE(testsup::run_cli("convert --input " + tns + " --output " + png) == 0);
  REQUIRE(testsup::run_cli("convert --input " + png + " --output " + back) == 0);
  const Tensor a = load_tns(tns);
  const Tensor b = load_tns(back);
  REQUIRE(a.dims() == b.dims());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::abs(a[i] - b[i]) <= 1.0 / 510.0);
  }
}

TEST_CASE("gray video restores through frame directories") {
  testsup::TempDir tmp;
  const std::string clean_dir = tmp.file("clean");
  const std::string degraded_dir = tmp.file("degraded");
  const std::string restored_dir = tmp.file("restored");

  // 6-frame gray clip with a moving bright block
  Tensor video({24, 24, 6});
  testsup::for_each_index(video.dims(), [&](const Dims& idx) {
    const std::size_t x0 = 2 * idx[2];
    const bool inside = idx[0] >= 6 && idx[0] < 14 && idx[1] >= x0 && idx[1] < x0 + 8;
    video.at(idx) = inside ? 0.85 : 0.25;
  });
  save_frame_dir(video, clean_dir);

  // 3x3x3 kernel couples the frame mode like the spatial ones
  REQUIRE(testsup::run_cli("blur --input " + clean_dir + " --output " + degraded_dir +
                           " --psf-size 3x3x3 --sigma 1 --noise-std 0.08 --seed 3") == 0);
  REQUIRE(testsup::run_cli("deblur --input " + degraded_dir + " --output " + restored_dir +
                           " --psf-size 3x3x3 --sigma 1 --lambda 0.005 --outer-iters 40") == 0);

  std::string degraded_psnr, restored_psnr;
  REQUIRE(testsup::run_cli("psnr --a " + degraded_dir + " --b " + clean_dir,
                           &degraded_psnr) == 0);
  REQUIRE(testsup::run_cli("psnr --a " + restored_dir + " --b " + clean_dir,
                           &restored_psnr) == 0);
  CHECK(std::stod(restored_psnr) > std::stod(degraded_psnr));

  const Tensor back = load_frame_dir(restored_dir);
  CHECK(back.dims() == video.dims());
}

TEST_CASE("blur accepts a psf from a tns file") {
  testsup::TempDir tmp;
  const std::string in = tmp.file("in.tns");
  const std::string kernel = tmp.file("kernel.tns");
  const std::string o1 = tmp.file("o1.tns");
  const std::string o2 = tmp.file("o2.tns");
  save_tns(testsup::piecewise_image(12, 12), in);
  save_tns(gaussian_psf({5, 5, 3}, 1.0).kernel, kernel);

  REQUIRE(testsup::run_cli("blur --input " + in + " --output " + o1 + " --psf " + kernel) == 0);
  REQUIRE(testsup::run_cli("blur --input " + in + " --output " + o2 +
                           " --psf-size 5x5x3 --sigma 1") == 0);
  // same kernel, same geometric center: identical results
  CHECK(testsup::slurp(o1) == testsup::slurp(o2));
}

TEST_CASE("bad flags produce a nonzero exit and a diagnostic") {
  std::string text;
  CHECK(testsup::run_cli("denoise --input x.tns", &text) != 0);  // missing required flags
  CHECK(!text.empty());

  CHECK(testsup::run_cli("denoise --input a.tns --output b.tns --lambda 0.1 --tv bogus",
                         &text) != 0);
  CHECK(text.find("--tv") != std::string::npos);

  CHECK(testsup::run_cli("psnr --a missing_file.tns --b missing_file.tns", &text) != 0);
}

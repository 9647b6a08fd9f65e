#include <doctest.h>

#include "biharm/kernels.hpp"
#include "biharm/quadrature.hpp"

#include <cmath>
#include <numbers>

using namespace biharm;

TEST_SUITE("quadrature") {

TEST_CASE("config validation") {
  QuadConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.n_theta = 100;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.n_r = 2;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.adapt_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.n_theta_max = 128;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("periodic trapezoid is exact for low trigonometric degree") {
  auto f = [](double t) { return cplx(std::cos(3 * t), 0.0) + std::polar(2.0, 5 * t) + 0.5; };
  CHECK(std::abs(trapezoid_periodic(f, 8) - 0.5) < 1e-15);
  CHECK(std::abs(trapezoid_periodic(f, 3) - 1.5) < 1e-14);  // cos 3t aliases to 1
}

TEST_CASE("Gauss-Legendre rules") {
  for (int n : {1, 2, 5, 16, 64, 257}) {
    const auto& r = gauss_legendre(n);
    REQUIRE(r.nodes.size() == n);
    CHECK(r.weights.sum() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.nodes.minCoeff() > 0.0);
    CHECK(r.nodes.maxCoeff() < 1.0);
    for (int i = 1; i < n; ++i) CHECK(r.nodes[i] > r.nodes[i - 1]);
    // exact through degree 2n - 1
    const int k = 2 * n - 1;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
    CHECK(s == doctest::Approx(1.0 / (k + 1)).epsilon(1e-12));
  }
  CHECK(&gauss_legendre(16) == &gauss_legendre(16));
  CHECK(gauss_legendre(2).nodes[0] == doctest::Approx(0.5 - 0.5 / std::sqrt(3.0)));
  CHECK_THROWS(gauss_legendre(0));
}

TEST_CASE("adaptive boundary rule converges near the circle") {
  QuadConfig cfg;
  const cplx z(0.999, 0.0);
  const cplx mean = adaptive_boundary_integral([&](double t) { return poisson_kernel(z, t); }, cfg);
  CHECK(std::abs(mean - 1.0) < 1e-9);
}

TEST_CASE("adaptive boundary rule reports non-convergence") {
  QuadConfig cfg;
  cfg.n_theta = 8;
  cfg.n_theta_max = 64;
  const cplx z(0.9999, 0.0);
  try {
    (void)adaptive_boundary_integral([&](double t) { return poisson_kernel(z, t); }, cfg);
    FAIL("expected NoConvergence");
  } catch (const NoConvergence& e) {
    CHECK(e.nodes() <= 64);
    CHECK(std::string(e.what()).find("adaptive_boundary_integral") != std::string::npos);
  }
}

TEST_CASE("origin-centred disk rule") {
  QuadConfig cfg;
  CHECK(std::abs(disk_quadrature([](cplx) { return 1.0; }, cfg) - 0.5) < 1e-14);
  // (1/2pi) int |w|^4 dA = 1/6
  CHECK(std::abs(disk_quadrature([](cplx w) { return std::norm(w) * std::norm(w); }, cfg) - 1.0 / 6.0) < 1e-14);
  CHECK(std::abs(disk_quadrature([](cplx w) { return w * w; }, cfg)) < 1e-15);
}

TEST_CASE("chord length") {
  CHECK(chord_length(0.0, 1.0) == doctest::Approx(1.0));
  CHECK(chord_length(0.5, 1.0) == doctest::Approx(0.5));
  CHECK(chord_length(0.5, -1.0) == doctest::Approx(1.5));
  CHECK(chord_length(cplx(0, 0.6), cplx(1, 0)) == doctest::Approx(0.8));
  // cancellation-free branch near the boundary
  CHECK(chord_length(0.999999, 1.0) == doctest::Approx(1e-6).epsilon(1e-9));
}

TEST_CASE("z-centred disk rule") {
  QuadConfig cfg;
  for (cplx c : {cplx(0, 0), cplx(0.5, 0.2), cplx(-0.9, 0.3)}) {
    CHECK(std::abs(disk_quadrature_centered([](cplx) { return 1.0; }, c, cfg) - 0.5) < 1e-12);
    const cplx m = disk_quadrature_centered([](cplx w) { return std::norm(w); }, c, cfg);
    CHECK(std::abs(m - 0.25) < 1e-10);
  }
  // excluding a disk of radius e removes e^2/2 from the unit mass
  const double e = 1e-2;
  const cplx cut = disk_quadrature_centered([](cplx) { return 1.0; }, cplx(0.3, 0.1), cfg, e);
  CHECK(std::abs(cut - (0.5 - 0.5 * e * e)) < 1e-12);
}

}  // TEST_SUITE

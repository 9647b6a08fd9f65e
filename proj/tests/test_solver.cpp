#include <doctest.h>

#include "biharm/cases.hpp"
#include "biharm/solver.hpp"

#include <cmath>

using namespace biharm;

TEST_SUITE("solver") {

TEST_CASE("problem construction validates data") {
  CHECK_NOTHROW(make_problem("p", "exp(i*t)", "0", "1"));
  CHECK_THROWS_AS(make_problem("p", "exp(i*", "0", "1"), ParseError);
  CHECK_THROWS_AS(make_problem("p", "z", "0", "t"), EvalError);
  CHECK_THROWS_AS(make_problem("p", "log(z-1)", "0", "0"), EvalError);
}

TEST_CASE("phi_1 removes one frequency") {
  const auto spec = make_problem("p", "0", "z^3", "0");
  CHECK(std::abs(spec.phi1(0.7) - std::polar(1.0, 1.4)) < 1e-15);
}

TEST_CASE("Poisson integral of boundary monomials") {
  QuadConfig cfg;
  const cplx z(0.3, -0.5);
  CHECK(std::abs(poisson_integral(parse("z^2"), z, cfg) - z * z) < 1e-13);
  CHECK(std::abs(poisson_integral(parse("zb^3"), z, cfg) - std::pow(std::conj(z), 3)) < 1e-13);
  CHECK(std::abs(poisson_integral(parse("cos(t)"), z, cfg) - z.real()) < 1e-13);
  CHECK(poisson_integral(parse("2"), z, cfg) == cplx(2.0, 0.0));
  CHECK_THROWS_AS(poisson_integral(parse("z"), Point(1.0, 0.0), cfg), DomainError);
}

TEST_CASE("conjugate term") {
  QuadConfig cfg;
  CHECK(std::abs(conjugate_term(parse("exp(-i*t)"), Point(0.5), cfg) - 0.375) < 1e-13);
  CHECK(std::abs(conjugate_term(parse("z^4"), cplx(0.2, 0.6), cfg)) < 1e-13);
}

TEST_CASE("Green potential of a constant") {
  QuadConfig cfg;
  cfg.n_r = 128;
  for (cplx z : {cplx(0, 0), cplx(0.4, 0.3), cplx(-0.9, 0.2)}) {
    const double d = 1.0 - std::norm(z);
    CHECK(std::abs(green_potential(parse("64"), z, cfg) + 8.0 * d * d) < 1e-9);
    CHECK(std::abs(green_potential(parse("1"), z, cfg) + d * d / 8.0) < 1e-11);
  }
  CHECK(green_potential(parse("0"), Point(0.5), cfg) == cplx(0.0, 0.0));
}

TEST_CASE("Green potential at the origin matches the closed form") {
  QuadConfig cfg;
  CHECK(std::abs(green_potential(parse("z*zb"), Point(0.0), cfg) - green_potential_at_origin(1, 1)) < 1e-12);
  CHECK(std::abs(green_potential(parse("z^2*zb^2"), Point(0.0), cfg) - green_potential_at_origin(2, 2)) < 1e-12);
  CHECK(std::abs(green_potential(parse("z^2*zb"), Point(0.0), cfg)) < 1e-13);
  CHECK(green_potential_at_origin(0, 0) == doctest::Approx(-0.125));
}

TEST_CASE("solution terms combine") {
  QuadConfig cfg;
  const auto ex = counterexample_case();
  const cplx z(0.4, 0.35);
  const auto s = solution_terms(ex.spec, z, cfg);
  const double d = 1.0 - std::norm(z);
  CHECK(std::abs(s.total - (s.poisson + s.conjugate - d * s.poisson_phi1 - s.green / 8.0)) < 1e-15);
  CHECK(std::abs(s.poisson - z * z) < 1e-13);
  CHECK(std::abs(s.conjugate) < 1e-13);
  CHECK(std::abs(s.poisson_phi1 + z * z) < 1e-13);
  CHECK(std::abs(s.total - ex.f(z)) < 1e-8);
}

TEST_CASE("identity map") {
  QuadConfig cfg;
  const auto spec = make_problem("id", "exp(i*t)", "0", "0");
  for (cplx z : {cplx(0.1, 0.2), cplx(-0.99, 0.05), cplx(0.0, 0.995)}) {
    CHECK(std::abs(evaluate_solution(spec, z, cfg) - z) < 1e-10);
    const auto g = gradient_solution(spec, z, cfg);
    CHECK(std::abs(g.dz - 1.0) < 1e-9);
    CHECK(std::abs(g.dzb) < 1e-9);
    CHECK(g.norm() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("gradient of the counterexample") {
  QuadConfig cfg;
  const auto ex = counterexample_case();
  for (cplx z : {cplx(0.0, 0.0), cplx(0.5, -0.2), cplx(-0.3, 0.8)}) {
    const auto g = gradient_solution(ex.spec, z, cfg);
    CHECK(std::abs(g.dz - ex.fz(z)) < 1e-6);
    CHECK(std::abs(g.dzb - ex.fzb(z)) < 1e-6);
  }
  CHECK_THROWS_AS(gradient_solution(ex.spec, Point(1.0 - 1e-7, 0.0), cfg), DomainError);
}

TEST_CASE("bilaplacian residual") {
  QuadConfig cfg;
  const auto cs = constant_source_case(64.0);
  const auto r = bilaplacian_residual(cs.spec, cplx(0.2, 0.1), cfg, 0.02);
  CHECK(std::abs(r) < 1e-2 * 64.0);
  CHECK_THROWS_AS(bilaplacian_residual(cs.spec, cplx(0.97, 0.0), cfg, 0.02), DomainError);
}

TEST_CASE("non-convergence names the failing term") {
  QuadConfig cfg;
  cfg.n_theta = 8;
  cfg.n_theta_max = 16;
  const auto spec = make_problem("rough", "exp(i*(t + 0.9*sin(t)))", "0", "0");
  try {
    (void)evaluate_solution(spec, cplx(0.995, 0.0), cfg);
    FAIL("expected NoConvergence");
  } catch (const NoConvergence& e) {
    CHECK(std::string(e.what()).find("poisson_integral(f_star)") != std::string::npos);
  }
}

TEST_CASE("SolutionField caches values") {
  const auto ex = counterexample_case();
  SolutionField field(ex.spec, QuadConfig{});
  const Point z(cplx(0.3, 0.4));
  CHECK(field.cached() == 0);
  const cplx a = field(z);
  const cplx b = field(z);
  CHECK(a == b);
  CHECK(field.cached() == 1);
  (void)field.gradient(z);
  CHECK(std::abs(field(z) - ex.f(z)) < 1e-8);
}

}  // TEST_SUITE

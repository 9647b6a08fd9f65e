#include <doctest.h>

#include "biharm/analysis.hpp"
#include "biharm/cases.hpp"

#include <cmath>
#include <numbers>

using namespace biharm;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("analysis") {

TEST_CASE("boundary sup norms") {
  CHECK(sup_norm_boundary(parse("exp(3*i*t)")).value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sup_norm_boundary(parse("0.3*sin(t)")).value == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(sup_norm_boundary(parse("exp(i*t) + 0.1*exp(2*i*t)")).value == doctest::Approx(1.1).epsilon(1e-12));
  CHECK(sup_norm_boundary(parse("2")).value == 2.0);
  const auto est = sup_norm_boundary(parse("cos(t)"), 64);
  CHECK(est.spacing == doctest::Approx(2 * kPi / 64));
  CHECK_THROWS_AS(sup_norm_boundary(parse("cos(t)"), 32), std::invalid_argument);
}

TEST_CASE("disk sup norms") {
  CHECK(sup_norm_disk(parse("64")).value == 64.0);
  CHECK(sup_norm_disk(parse("-1920*z^3*zb")).value == doctest::Approx(1920.0).epsilon(1e-12));
  CHECK(sup_norm_disk(parse("z*zb*(1-z*zb)")).value == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(sup_norm_disk(parse("1 - z*zb")).value == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("Schwarz-Pick ratio") {
  CHECK(schwarz_pick_ratio(0.0, 0.0, 1.0) == 1.0);
  CHECK(schwarz_pick_ratio(0.0, 0.0, 3.5) == 1.0);
  CHECK(schwarz_pick_ratio(0.5, 0.5, 1.0) == doctest::Approx(1.0));
  const double r = 0.99;  // |z|^2
  const double m = std::sqrt(r);
  const double expected = (1 - r) / ((1 - r * r) * (1 - r * r) * (1 + 2 * r * r - r * r * r * r));
  const auto ex = counterexample_case();
  CHECK(schwarz_pick_ratio(m, ex.f(m), 2.0) == doctest::Approx(expected).epsilon(1e-9));
  try {
    (void)schwarz_pick_ratio(0.5, cplx(0.6, 0.8), 1.0);
    FAIL("expected UndefinedRatio");
  } catch (const UndefinedRatio& e) {
    CHECK(e.modulus() == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(schwarz_pick_ratio(0.5, 0.1, 0.0), std::invalid_argument);
}

TEST_CASE("theorem bound arithmetic") {
  CHECK(theorem2_bound(make_bound_setting(1, 0, 0)) == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(theorem2_bound(make_bound_setting(1, 0.01, 0.1)) == doctest::Approx(1.693853660545091).epsilon(1e-13));
  CHECK(theorem2_bound(make_bound_setting(2, 0.1, 1)) == doctest::Approx(17.09554477306103).epsilon(1e-13));
  CHECK(make_bound_setting(1, 0, 0).factor() == 4.0);
  CHECK(make_bound_setting(2, 0, 0).factor() == 5.0);
  CHECK(make_bound_setting(3, 0, 0).factor() == 13.0);
  CHECK(make_bound_setting(2.5, 0, 0).factor() == doctest::Approx(std::exp2(1.5) * 2.5 + 1));
  CHECK_THROWS_AS(make_bound_setting(1.5, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_bound_setting(0.5, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_bound_setting(1, -0.1, 0), std::invalid_argument);
  const auto bad = make_bound_setting(1, 0.2, 0);
  CHECK_FALSE(bad.feasible());
  CHECK_THROWS_AS(theorem2_bound(bad), InfeasibleBound);
}

TEST_CASE("bound increases with either norm") {
  for (double q : {1.0, 2.0, 3.0}) {
    double prev = theorem2_bound(make_bound_setting(q, 0, 0));
    for (int k = 1; k < 20; ++k) {
      const auto s = make_bound_setting(q, 0.001 * k, 0.0);
      if (!s.feasible()) break;
      const double b = theorem2_bound(s);
      CHECK(b > prev);
      prev = b;
    }
    prev = theorem2_bound(make_bound_setting(q, 0, 0));
    for (int k = 1; k < 20; ++k) {
      const auto s = make_bound_setting(q, 0.0, 0.1 * k);
      if (!s.feasible()) break;
      const double b = theorem2_bound(s);
      CHECK(b > prev);
      prev = b;
    }
  }
}

TEST_CASE("scalar margins") {
  CHECK(lemma_c_margin(1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(lemma_c_margin(0.0) == doctest::Approx(0.3633802276324187).epsilon(1e-14));
  CHECK(lemma_c_margin(0.5) == doctest::Approx(0.09135564321447623).epsilon(1e-13));
  CHECK(lemma_b_margin(0.5, 0.0, 3.0) == 0.0);
  CHECK(lemma_b_margin(0.0, 0.5, 2.0) == doctest::Approx(1.75));
  CHECK(lemma_b_margin(0.9, 0.09, 2.0) == doctest::Approx(0.1899));
  const cplx z(0.3, 0.4);
  CHECK(heinz_pavlovic_margin(z, z, 0.0) == doctest::Approx(4 / kPi * std::atan(0.5) - 0.5));
  CHECK(heinz_pavlovic_margin(0.0, 0.3, 0.3) == doctest::Approx(0.0));
}

TEST_CASE("Green gradient integral") {
  QuadConfig cfg;
  CHECK(green_gradient_integral(Point(0.0), cfg) == doctest::Approx(16 * kPi / 45).epsilon(1e-6));
  CHECK(green_gradient_integral(Point(0.5), cfg) <= kGreenGradientBound);
  CHECK(kGreenGradientBound == doctest::Approx(24.0855).epsilon(1e-5));
}

TEST_CASE("Poisson gradient bound") {
  QuadConfig cfg;
  CHECK(dp_bound_check(parse("exp(i*t)"), Point(0.0), cfg) == doctest::Approx(0.2732395447351627).epsilon(1e-12));
  CHECK(dp_bound_check(parse("2"), Point(0.5), cfg) == doctest::Approx(4 / kPi * 2 / 0.75));
  CHECK(dp_bound_check(parse("exp(3*i*t)"), Point(0.5), cfg) >= 0.0);
}

TEST_CASE("Lipschitz estimate for the identity") {
  const auto spec = make_problem("id", "exp(i*t)", "0", "0");
  SolutionField field(spec, QuadConfig{});
  const auto est = lipschitz_constant_estimate(field, GridSpec{4, 8, 0.9});
  CHECK(est.m_hat == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(est.l_hat == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(est.m_pred == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(est.unimodular());
}

TEST_CASE("Lipschitz ceiling with small phi") {
  const auto spec = make_problem("phi", "exp(i*t)", "0.01*exp(2*i*t)", "0");
  SolutionField field(spec, QuadConfig{});
  NormOverrides exact;
  exact.phi1 = 0.01;
  exact.g = 0.0;
  const auto est = lipschitz_constant_estimate(field, GridSpec{}, exact);
  CHECK(est.m_pred == doctest::Approx(1.0 + (2 + 4 / kPi) * 0.01).epsilon(1e-9));
  CHECK(est.m_hat <= est.m_pred + 1e-9);
}

TEST_CASE("norm estimates are inflated unless overridden") {
  const auto spec = make_problem("n", "0", "0.02*exp(3*i*t)", "0.5");
  const auto est = data_norms(spec);
  CHECK(est.phi1 == doctest::Approx(0.0202).epsilon(1e-10));
  CHECK(est.g == doctest::Approx(0.505).epsilon(1e-12));
  NormOverrides o;
  o.g = 0.5;
  CHECK(data_norms(spec, o).g == 0.5);
}

TEST_CASE("metrics") {
  CHECK(j_metric(0.0, 0.0) == 0.0);
  CHECK(j_metric(0.0, 0.5) == doctest::Approx(std::log(2.0)));
  CHECK(j_metric(0.5, -0.5) == doctest::Approx(std::log(3.0)));
  CHECK(hyperbolic_distance(0.0, 0.5) == doctest::Approx(1.0986122886681098));
  CHECK(hyperbolic_distance(0.3, 0.3) == 0.0);
  CHECK(hyperbolic_distance(0.2, 0.5) == doctest::Approx(0.6931471805599453).epsilon(1e-14));
  CHECK(hyperbolic_distance(0.2, 0.5) == doctest::Approx(hyperbolic_distance(0.0, (0.5 - 0.2) / (1 - 0.1))));
  CHECK(hyperbolic_distance_numeric(0.0, 0.5) == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK_THROWS_AS(j_metric(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(hyperbolic_distance(0.0, cplx(0.6, 0.8)), DomainError);
}

TEST_CASE("corollary constants and checks") {
  const auto spec = make_problem("id", "exp(i*t)", "0", "0");
  SolutionField field(spec, QuadConfig{});
  const auto est = lipschitz_constant_estimate(field, GridSpec{4, 8, 0.9});
  CHECK(corollary_constants(Metric::j, est).lipschitz == doctest::Approx(kPi / 2).epsilon(1e-9));
  CHECK(corollary_constants(Metric::hyperbolic, est).lipschitz == doctest::Approx(kPi / 2).epsilon(1e-9));

  std::vector<std::pair<Point, Point>> pairs{{cplx(0.1, 0.2), cplx(-0.5, 0.3)},
                                             {cplx(0.7, 0.0), cplx(0.0, -0.8)},
                                             {cplx(0.4, 0.4), cplx(0.4, 0.4)}};
  const Report rj = corollary_check(field, pairs, Metric::j, est);
  REQUIRE(rj.rows.size() == 3);
  CHECK(rj.rows[0].measured == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rj.rows[2].status == RowStatus::flagged);
  CHECK(rj.ok());
  const Report rh = corollary_check(field, pairs, Metric::hyperbolic, est);
  CHECK(rh.ok());

  LipschitzEstimate heavy = est;
  heavy.norms.phi1 = 0.14;
  CHECK_NOTHROW(corollary_constants(Metric::j, heavy));
  CHECK_THROWS_AS(corollary_constants(Metric::hyperbolic, heavy), InfeasibleBound);

  const auto shifted = make_problem("shift", "0.5 + 0.4*exp(i*t)", "0", "0");
  SolutionField sf(shifted, QuadConfig{});
  CHECK_THROWS_AS(corollary_check(sf, pairs, Metric::j, est), std::domain_error);
}

TEST_CASE("corollary pipeline for small data") {
  const auto spec = make_problem("small", "exp(i*t)", "0.02*exp(2*i*t)", "0.5");
  SolutionField field(spec, QuadConfig{});
  // f(0) = -P[phi_1](0) - G[0.5](0)/8 is not zero here, so only the constants are checked.
  const auto est = lipschitz_constant_estimate(field, GridSpec{});
  CHECK(4 * est.norms.data_size() < 2 / kPi);
  CHECK(corollary_constants(Metric::j, est).lipschitz >= est.m_hat / (2 / kPi));
}

TEST_CASE("grid points") {
  const auto pts = GridSpec{3, 4, 0.5}.points();
  REQUIRE(pts.size() == 1 + 2 * 4);
  CHECK(pts[0].value() == cplx(0, 0));
  CHECK(pts.back().modulus() == doctest::Approx(0.5));
}

}  // TEST_SUITE

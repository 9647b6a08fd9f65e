#include "biharm/suites.hpp"

#include "biharm/cases.hpp"
#include "biharm/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace biharm {

namespace {

constexpr double kPi = std::numbers::pi;

// Sub-stream offsets so that every check draws from its own seeded stream.
enum Stream : std::uint64_t {
  kThm2Specs = 0,
  kThm2Points = 10000,
  kGreenBound = 20000,
  kLipschitzSpecs = 30000,
  kLipschitzPairs = 40000,
  kCorollaryPairs = 50000,
  kRepresentation = 60000,
  kLemmaB = 70000,
  kHomeomorphisms = 80000,
  kHomeoPoints = 81000,
  kKernels = 90000,
  kGreenGradient = 91000,
  kDpBound = 92000,
};

std::string q_label(double q) { return "q=" + format_double(q); }

// 4th-order central second derivative along direction `dir`.
template <typename Fn>
cplx second_difference(Fn&& f, cplx z, cplx dir, double h) {
  return (-f(z + 2.0 * h * dir) + 16.0 * f(z + h * dir) - 30.0 * f(z) + 16.0 * f(z - h * dir) -
          f(z - 2.0 * h * dir)) /
         (12.0 * h * h);
}

template <typename Fn>
cplx first_difference(Fn&& f, cplx z, cplx dir, double h) {
  return (-f(z + 2.0 * h * dir) + 8.0 * f(z + h * dir) - 8.0 * f(z - h * dir) + f(z - 2.0 * h * dir)) /
         (12.0 * h);
}

std::vector<cplx> disk_samples(Rng& rng, std::size_t n, double r_max) {
  std::vector<cplx> out(n);
  for (auto& z : out) z = rng.in_disk(r_max);
  return out;
}

}  // namespace

// ---- thm1 ------------------------------------------------------------------

Report thm1_schwarz_pick_divergence() {
  Report r;
  r.suite = "thm1";
  const auto ex = counterexample_case();
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (int k = 3; k <= 12; ++k) {
    const double m = 1.0 - std::ldexp(1.0, -k);
    const cplx z = std::polar(m, 0.7);
    const double ratio = (1.0 - m * m) / counterexample_one_minus_abs_sq(m);
    const double direct = schwarz_pick_ratio(z, ex.f(z), 2.0);
    r.add(bound_row("thm1/ratio-closed-form", z, std::nullopt, std::abs(direct - ratio) / ratio, 0.0,
                    1e-6));
    if (k > 3) r.add(strict_row("thm1/ratio-increasing", z, std::nullopt, prev, ratio));
    if (k == 12) r.add(strict_row("thm1/ratio-above-1e3", z, std::nullopt, 1e3, ratio));
    prev = ratio;
  }
  r.notes.push_back("ratio (1-|z|^2)/(1-|f|^2) at |z| = 1 - 2^-k grows like 2^k/16");
  return r;
}

Report thm1_poisson_differential() {
  Report r;
  r.suite = "thm1";
  const auto ex = counterexample_case();
  const cplx ex_dir(1.0, 0.0);
  const cplx ey_dir(0.0, 1.0);
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (int k = 2; k <= 10; ++k) {
    const double m = std::ldexp(1.0, -k);
    const cplx z = std::polar(m, 0.3);
    const cplx lap = ex.laplacian(z);
    const double df = std::abs(ex.fz(z)) + std::abs(ex.fzb(z));
    const double df_sq = df * df;

    const double h = 1e-2 * m;
    const cplx lap_fd = second_difference(ex.f, z, ex_dir, h) + second_difference(ex.f, z, ey_dir, h);
    r.add(bound_row("thm1/laplacian-fd", z, std::nullopt, std::abs(lap - lap_fd) / std::abs(lap), 0.0,
                    1e-6));
    const double display = 3.0 * std::abs(2.0 - 5.0 * m * m);
    r.add(flagged_row("thm1/laplacian-display-mismatch", z, std::nullopt,
                      std::abs(display - std::abs(lap_fd)) / std::abs(lap_fd)));
    r.add(bound_row("thm1/df-closed-form", z, std::nullopt,
                    std::abs(df_sq - counterexample_df_sq(m)) / df_sq, 0.0, 1e-12));

    const double ratio = std::abs(lap) / df_sq;
    if (k > 2) r.add(strict_row("thm1/lap-over-df2-increasing", z, std::nullopt, prev, ratio));
    if (k == 10) r.add(strict_row("thm1/lap-over-df2-above-1e2", z, std::nullopt, 1e2, ratio));
    prev = ratio;
  }
  r.notes.push_back("Laplacian 12 z^2 (2 - 5|z|^4) confirmed by finite differences; "
                    "the display 3|2 - 5|z|^2| is recorded as flagged rows");
  return r;
}

// ---- thm2 ------------------------------------------------------------------

Report thm2_sweep(const SuiteOptions& opt) {
  std::vector<double> qs;
  if (opt.q) qs.push_back(*opt.q);
  else qs = {1.0, 2.0};
  for (double q : qs) make_bound_setting(q, 0.0, 0.0);  // rejects bad q up front

  Report r;
  r.suite = "thm2";
  r.add(bound_row("thm2(q=1)/zero-norm-bound", cplx{}, std::nullopt,
                  std::abs(theorem2_bound(make_bound_setting(1.0, 0.0, 0.0)) - kPi / 2.0), 0.0, 1e-12));

  constexpr std::size_t kSpecs = 50;
  constexpr std::size_t kPoints = 200;
  std::vector<DataNorms> norms(kSpecs);
  std::vector<std::vector<cplx>> zs(kSpecs);
  std::vector<std::vector<cplx>> fs(kSpecs);
  parallel_for(kSpecs, [&](std::size_t i) {
    const FeasibleCase c = random_feasible_case(derive_seed(opt.seed, kThm2Specs + i));
    norms[i] = data_norms(c.spec, opt.norms);
    Rng rng(derive_seed(opt.seed, kThm2Points + i));
    zs[i] = disk_samples(rng, kPoints, 0.99);
    fs[i].resize(kPoints);
    for (std::size_t j = 0; j < kPoints; ++j) fs[i][j] = evaluate_solution(c.spec, zs[i][j], opt.quad);
  });

  for (double q : qs) {
    const std::string tag = "thm2(" + q_label(q) + ")";
    for (std::size_t i = 0; i < kSpecs; ++i) {
      const BoundSetting s = make_bound_setting(q, norms[i].phi1, norms[i].g);
      if (!s.feasible()) {
        r.add(flagged_row(tag + "/infeasible", cplx{}, std::nullopt, s.factor() * s.data_size()));
        continue;
      }
      const double bound = theorem2_bound(s);
      for (std::size_t j = 0; j < kPoints; ++j) {
        const cplx z = zs[i][j];
        const cplx fz = fs[i][j];
        if (!(std::abs(fz) < 1.0)) {
          r.add(flagged_row(tag + "/not-self-map", z, std::nullopt, std::abs(fz)));
          continue;
        }
        r.add(bound_row(tag + "/ratio", z, std::nullopt, schwarz_pick_ratio(z, fz, q), bound, opt.ratio_tol));
      }
    }
  }
  return r;
}

Report green_bound_check(const SuiteOptions& opt) {
  Report r;
  r.suite = "thm2";
  QuadConfig fine = opt.quad;
  fine.n_r = std::max(fine.n_r, 128);
  Rng rng(derive_seed(opt.seed, kGreenBound));

  const Expr g64 = constant_source_case(64.0).spec.g;
  const auto pts = disk_samples(rng, 50, 0.95);
  std::vector<cplx> vals(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { vals[i] = green_potential(g64, pts[i], fine); });
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double d = 1.0 - std::norm(pts[i]);
    const double exact = 8.0 * d * d;
    r.add(bound_row("green-bound/equality", pts[i], std::nullopt, std::abs(std::abs(vals[i]) - exact) / exact,
                    0.0, 1e-8));
  }

  constexpr int kSources = 20;
  constexpr int kPerSource = 10;
  for (int s = 0; s < kSources; ++s) {
    std::vector<Monomial> terms;
    const int n_terms = 1 + static_cast<int>(rng.next() % 4);
    for (int t = 0; t < n_terms; ++t) {
      const int a = static_cast<int>(rng.next() % 4);
      const int b = static_cast<int>(rng.next() % 4);
      terms.push_back({rng.in_disk(2.0), a, b});
    }
    const Expr g = parse(polynomial_text(terms));
    const double norm = sup_norm_disk(g).value;
    const auto zs = disk_samples(rng, kPerSource, 0.95);
    std::vector<cplx> gv(zs.size());
    parallel_for(zs.size(), [&](std::size_t i) { gv[i] = green_potential(g, zs[i], fine); });
    for (std::size_t i = 0; i < zs.size(); ++i) {
      const double d = 1.0 - std::norm(zs[i]);
      r.add(bound_row("green-bound/inequality", zs[i], std::nullopt, std::abs(gv[i]), norm * d * d / 8.0, 1e-6));
    }
  }
  return r;
}

// ---- thm3 ------------------------------------------------------------------

Report green_gradient_constant(const SuiteOptions& opt) {
  Report r;
  r.suite = "thm3";
  Rng rng(derive_seed(opt.seed, kGreenGradient));
  std::vector<cplx> pts{cplx{}};
  for (cplx z : disk_samples(rng, 19, 0.95)) pts.push_back(z);
  std::vector<double> vals(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { vals[i] = green_gradient_integral(pts[i], opt.quad); });
  for (std::size_t i = 0; i < pts.size(); ++i)
    r.add(bound_row("green-gradient/integral", pts[i], std::nullopt, vals[i], kGreenGradientBound, 0.0));

  QuadConfig c128 = opt.quad;
  c128.n_r = 128;
  QuadConfig c256 = opt.quad;
  c256.n_r = 256;
  const double i128 = green_gradient_integral(Point(cplx{}), c128);
  const double i256 = green_gradient_integral(Point(cplx{}), c256);
  r.add(bound_row("green-gradient/n_r-doubling", cplx{}, std::nullopt, std::abs(i128 - i256) / std::abs(i256),
                  5e-4, 0.0));
  return r;
}

Report dp_bound_sweep(const SuiteOptions& opt) {
  Report r;
  r.suite = "thm3";
  Rng rng(derive_seed(opt.seed, kDpBound));
  std::vector<Expr> data{parse("1"), parse("exp(i*t)"), parse("exp(3*i*t)"), parse("0.3*sin(t)")};
  for (int s = 0; s < 4; ++s) data.push_back(random_circle_homeomorphism(rng.next()));
  for (std::size_t d = 0; d < data.size(); ++d) {
    const Expr& F = data[d];
    const std::string id = "dp-bound/data" + std::to_string(d);
    r.notes.push_back(id + ": F = " + F.source());
    const double norm = sup_norm_boundary(F).value;
    const auto zs = disk_samples(rng, 20, 0.95);
    std::vector<double> margins(zs.size());
    parallel_for(zs.size(), [&](std::size_t i) { margins[i] = dp_bound_check(F, zs[i], opt.quad, norm); });
    for (std::size_t i = 0; i < zs.size(); ++i) {
      const double bound = (4.0 / kPi) * norm / (1.0 - std::norm(zs[i]));
      r.add(bound_row(id, zs[i], std::nullopt, bound - margins[i], bound, 1e-9));
    }
  }
  return r;
}

std::vector<FeasibleCase> lipschitz_cases(std::uint64_t seed, int count) {
  std::vector<FeasibleCase> out;
  for (int i = 0; i < count; ++i)
    out.push_back(random_feasible_case(derive_seed(seed, kLipschitzSpecs + static_cast<std::uint64_t>(i))));
  return out;
}

namespace {

std::vector<std::pair<Point, Point>> random_pairs(Rng& rng, std::size_t n, double r_max) {
  std::vector<std::pair<Point, Point>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx a = rng.in_disk(r_max);
    const cplx b = rng.in_disk(r_max);
    out.emplace_back(a, b);
  }
  return out;
}

}  // namespace

Report thm3_lipschitz(const SuiteOptions& opt) {
  Report r;
  r.suite = "thm3";
  const auto cases = lipschitz_cases(opt.seed);
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const SolutionField field(cases[c].spec, opt.quad);
    const LipschitzEstimate est = lipschitz_constant_estimate(field, GridSpec{}, opt.norms);
    r.add(bound_row("thm3/lipschitz-ceiling", cplx{}, std::nullopt, est.m_hat, est.m_pred, opt.lipschitz_tol));
    if (!est.unimodular())
      r.add(flagged_row("thm3/not-unimodular", cplx{}, std::nullopt, est.unimodular_defect));

    Rng rng(derive_seed(opt.seed, kLipschitzPairs + c));
    const auto pairs = random_pairs(rng, 100, 0.9);
    std::vector<double> q(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t i) {
      const cplx a = pairs[i].first;
      const cplx b = pairs[i].second;
      q[i] = std::abs(field(pairs[i].first) - field(pairs[i].second)) / std::abs(a - b);
    });
    for (std::size_t i = 0; i < pairs.size(); ++i)
      r.add(bound_row("thm3/difference-quotient", pairs[i].first, pairs[i].second.value(), q[i], est.m_hat,
                      opt.lipschitz_tol));
  }
  r.notes.push_back("f* of the sweep specs is analytic but not unimodular; see thm3/not-unimodular rows");
  return r;
}

// ---- cor -------------------------------------------------------------------

Report corollary_sweep(const SuiteOptions& opt) {
  Report r;
  r.suite = "cor";
  const auto cases = lipschitz_cases(opt.seed);
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const SolutionField field(cases[c].spec, opt.quad);
    const double f0 = std::abs(field(Point(cplx{})));
    r.add(bound_row("cor/f0", cplx{}, std::nullopt, f0, 1e-8, 0.0));
    if (!(f0 < 1e-8)) continue;

    const LipschitzEstimate est = lipschitz_constant_estimate(field, GridSpec{}, opt.norms);
    Rng rng(derive_seed(opt.seed, kCorollaryPairs + c));
    auto pairs = random_pairs(rng, 100, 0.9);
    if (c == 0) pairs.emplace_back(pairs.front().first, pairs.front().first);
    for (Metric m : {Metric::j, Metric::hyperbolic}) {
      try {
        r.append(corollary_check(field, pairs, m, est, opt.lipschitz_tol));
      } catch (const InfeasibleBound&) {
        r.add(flagged_row(m == Metric::j ? "cor/j-metric/infeasible" : "cor/hyperbolic/infeasible", cplx{},
                          std::nullopt, est.norms.data_size()));
      }
    }
  }
  return r;
}

// ---- kernels ---------------------------------------------------------------

Report representation_check(const SuiteOptions& opt) {
  Report r;
  r.suite = "kernels";
  const auto ex = counterexample_case();
  Rng rng(derive_seed(opt.seed, kRepresentation));
  const auto pts = disk_samples(rng, 100, 0.9);
  std::vector<cplx> vals(pts.size());
  std::vector<Gradient> grads(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    vals[i] = evaluate_solution(ex.spec, pts[i], opt.quad);
    grads[i] = gradient_solution(ex.spec, pts[i], opt.quad);
  });
  for (std::size_t i = 0; i < pts.size(); ++i)
    r.add(bound_row("representation/value", pts[i], std::nullopt, std::abs(vals[i] - ex.f(pts[i])), 0.0, 1e-6));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double err = std::max(std::abs(grads[i].dz - ex.fz(pts[i])), std::abs(grads[i].dzb - ex.fzb(pts[i])));
    r.add(bound_row("representation/gradient", pts[i], std::nullopt, err, 0.0, 1e-5));
  }
  return r;
}

Report kernel_properties(const SuiteOptions& opt) {
  Report r;
  r.suite = "kernels";
  Rng rng(derive_seed(opt.seed, kKernels));

  for (int i = 0; i < 1000; ++i) {
    const cplx z = rng.in_disk(0.99);
    const cplx w = rng.in_disk(0.99);
    r.add(bound_row("green/symmetry", z, w, std::abs(green_biharmonic(z, w) - green_biharmonic(w, z)), 0.0,
                    1e-13));
  }
  for (int i = 0; i < 200; ++i) {
    const cplx z = rng.in_disk(0.99);
    const cplx w = std::polar(1.0, 2.0 * kPi * rng.uniform());
    r.add(bound_row("green/boundary", z, w, std::abs(green_biharmonic(z, w)), 0.0, 1e-10));
  }
  for (int i = 0; i < 100; ++i) {
    const cplx z = rng.in_disk(0.95);
    const cplx mean = adaptive_boundary_integral([&](double t) { return cplx(poisson_kernel(z, t), 0.0); }, opt.quad);
    r.add(bound_row("poisson/unit-mean", z, std::nullopt, std::abs(mean - 1.0), 0.0, 1e-12));
  }

  const auto G = [](cplx w) { return [w](cplx z) { return cplx(green_biharmonic(z, w), 0.0); }; };
  for (int i = 0; i < 1000; ++i) {
    const cplx z = rng.in_disk(0.9);
    cplx w = rng.in_disk(0.9);
    while (std::abs(z - w) < 0.05) w = rng.in_disk(0.9);
    const auto gw = G(w);
    const double h = 1e-3;
    const cplx gx = first_difference(gw, z, 1.0, h);
    const cplx gy = first_difference(gw, z, cplx(0.0, 1.0), h);
    const cplx dz_fd = 0.5 * (gx - cplx(0.0, 1.0) * gy);
    const cplx dzb_fd = 0.5 * (gx + cplx(0.0, 1.0) * gy);
    const auto an = green_gradient(z, w);
    r.add(bound_row("green/gradient-fd", z, w, std::max(std::abs(an.dz - dz_fd), std::abs(an.dzb - dzb_fd)), 0.0,
                    1e-6));
  }

  {
    QuadConfig fine = opt.quad;
    fine.n_r = std::max(fine.n_r, 128);
    const auto cs = constant_source_case(64.0);
    const auto pts = disk_samples(rng, 50, 0.95);
    std::vector<cplx> vals(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) { vals[i] = evaluate_solution(cs.spec, pts[i], fine); });
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double d = 1.0 - std::norm(pts[i]);
      r.add(bound_row("constant-source/value", pts[i], std::nullopt, std::abs(vals[i] - d * d), 0.0, 1e-8));
    }
  }

  {
    const auto ex = counterexample_case();
    constexpr double h = 0.02;
    std::vector<cplx> pts;
    for (int i = 0; i < 10; ++i) pts.push_back(std::polar(rng.uniform(0.3, 0.8), 2.0 * kPi * rng.uniform()));
    std::vector<double> rel(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
      rel[i] = std::abs(bilaplacian_residual(ex.spec, pts[i], opt.quad, h)) / std::abs(ex.spec.g(pts[i]));
    });
    for (std::size_t i = 0; i < pts.size(); ++i)
      r.add(bound_row("bilaplacian/residual", pts[i], std::nullopt, rel[i], 0.0, 5e-2));
  }
  return r;
}

// ---- lemmas ----------------------------------------------------------------

Report scalar_lemmas(const SuiteOptions& opt) {
  Report r;
  r.suite = "lemmas";

  constexpr int kGrid = 10000;
  constexpr int kBlock = 100;
  for (int b = 0; b < kGrid / kBlock; ++b) {
    double worst = std::numeric_limits<double>::infinity();
    double worst_t = 0.0;
    for (int i = b * kBlock; i < (b + 1) * kBlock && i < kGrid - 1; ++i) {
      const double t = static_cast<double>(i) / (kGrid - 1);
      const double m = lemma_c_margin(t);
      if (m < worst) {
        worst = m;
        worst_t = t;
      }
    }
    r.add(strict_row("lemma_c/interior", worst_t, std::nullopt, 1e-12, worst));
  }
  r.add(bound_row("lemma_c/equality", 1.0, std::nullopt, std::abs(lemma_c_margin(1.0)), 0.0, 1e-12));

  Rng rng(derive_seed(opt.seed, kLemmaB));
  constexpr int kTriples = 100000;
  constexpr int kTripleBlock = 1000;
  for (int b = 0; b < kTriples / kTripleBlock; ++b) {
    double worst = std::numeric_limits<double>::infinity();
    cplx where{};
    double worst_q = 0.0;
    for (int i = 0; i < kTripleBlock; ++i) {
      const double y = rng.uniform();
      const double eps = rng.uniform();
      const double q = 8.0 - 7.0 * rng.uniform();  // (1, 8]
      const double m = lemma_b_margin(y, eps, q);
      if (m < worst) {
        worst = m;
        where = {y, eps};
        worst_q = q;
      }
    }
    r.add(bound_row("lemma_b/margin", where, cplx(worst_q, 0.0), -worst, 0.0, 0.0));
  }

  constexpr std::size_t kMaps = 20;
  constexpr std::size_t kPoints = 200;
  std::vector<std::vector<cplx>> zs(kMaps);
  std::vector<std::vector<double>> margins(kMaps);
  parallel_for(kMaps, [&](std::size_t m) {
    const Expr F = random_circle_homeomorphism(derive_seed(opt.seed, kHomeomorphisms + m));
    Rng pr(derive_seed(opt.seed, kHomeoPoints + m));
    zs[m] = disk_samples(pr, kPoints, 0.95);
    const cplx f0 = poisson_integral(F, Point(cplx{}), opt.quad);
    for (cplx z : zs[m]) margins[m].push_back(heinz_pavlovic_margin(z, poisson_integral(F, z, opt.quad), f0));
  });
  for (std::size_t m = 0; m < kMaps; ++m)
    for (std::size_t i = 0; i < kPoints; ++i)
      r.add(bound_row("heinz-pavlovic/margin", zs[m][i], std::nullopt, -margins[m][i], 0.0, 1e-9));
  return r;
}

// ---- dispatch --------------------------------------------------------------

bool is_suite(std::string_view name) {
  return std::find(std::begin(kSuiteNames), std::end(kSuiteNames), name) != std::end(kSuiteNames);
}

Report run_suite(std::string_view name, const SuiteOptions& opt) {
  Report r;
  r.suite = std::string(name);
  if (name == "thm1") {
    r.append(thm1_schwarz_pick_divergence());
    r.append(thm1_poisson_differential());
  } else if (name == "thm2") {
    r.append(thm2_sweep(opt));
    r.append(green_bound_check(opt));
  } else if (name == "thm3") {
    r.append(green_gradient_constant(opt));
    r.append(dp_bound_sweep(opt));
    r.append(thm3_lipschitz(opt));
  } else if (name == "cor") {
    r.append(corollary_sweep(opt));
  } else if (name == "kernels") {
    r.append(representation_check(opt));
    r.append(kernel_properties(opt));
  } else if (name == "lemmas") {
    r.append(scalar_lemmas(opt));
  } else {
    throw std::invalid_argument("unknown suite: " + std::string(name));
  }
  return r;
}

}  // namespace biharm

#include "biharm/analysis.hpp"

#include "biharm/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace biharm {

UndefinedRatio::UndefinedRatio(double modulus)
    : std::domain_error("Schwarz-Pick ratio undefined: |f(z)| = " + format_double(modulus) +
                        " >= 1"),
      modulus_(modulus) {}

namespace {

constexpr double kInvPhi = 0.6180339887498949;  // 1/golden ratio

template <typename Fn>
double golden_max(Fn&& fn, double lo, double hi, int iters = 80) {
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = fn(c);
  double fd = fn(d);
  for (int i = 0; i < iters && (b - a) > 1e-15; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = fn(d);
    }
  }
  return std::max(fc, fd);
}

}  // namespace

SupEstimate sup_norm_boundary(const std::function<cplx(double)>& F, int n) {
  if (n < 64) throw std::invalid_argument("sup_norm_boundary: n must be >= 64");
  const double step = 2.0 * std::numbers::pi / n;
  int best = 0;
  double best_val = -1.0;
  for (int k = 0; k < n; ++k) {
    const double v = std::abs(F(step * k));
    if (v > best_val) {
      best_val = v;
      best = k;
    }
  }
  const double t0 = step * best;
  const double refined = golden_max([&](double t) { return std::abs(F(t)); }, t0 - step, t0 + step);
  SupEstimate out;
  out.value = std::max(best_val, refined);
  out.spacing = step;
  out.argmax = cplx(std::cos(t0), std::sin(t0));
  return out;
}

SupEstimate sup_norm_boundary(const Expr& F, int n) {
  if (auto c = F.as_literal()) return {std::abs(*c), 2.0 * std::numbers::pi / n, cplx(1.0, 0.0)};
  return sup_norm_boundary([&F](double t) { return F.on_circle(t); }, n);
}

SupEstimate sup_norm_disk(const Expr& g, int n_grid) {
  if (n_grid < 8) throw std::invalid_argument("sup_norm_disk: n_grid must be >= 8");
  if (auto c = g.as_literal()) return {std::abs(*c), 1.0 / n_grid, cplx{}};
  const int n_ang = 4 * n_grid;
  const double dr = 1.0 / (n_grid - 1);
  const double da = 2.0 * std::numbers::pi / n_ang;
  double best_val = std::abs(g(cplx{}));
  double best_r = 0.0;
  double best_a = 0.0;
  for (int i = 1; i < n_grid; ++i) {
    const double r = std::min(1.0, dr * i);
    for (int k = 0; k < n_ang; ++k) {
      const double a = da * k;
      const double v = std::abs(g(std::polar(r, a)));
      if (v > best_val) {
        best_val = v;
        best_r = r;
        best_a = a;
      }
    }
  }
  // Compass search in (r, angle), r clamped to [0, 1].
  double sr = dr;
  double sa = da;
  for (int iter = 0; iter < 200 && (sr > 1e-13 || sa > 1e-13); ++iter) {
    bool moved = false;
    const double cand[4][2] = {{best_r + sr, best_a}, {best_r - sr, best_a}, {best_r, best_a + sa},
                               {best_r, best_a - sa}};
    for (const auto& c : cand) {
      const double r = std::clamp(c[0], 0.0, 1.0);
      const double v = std::abs(g(std::polar(r, c[1])));
      if (v > best_val) {
        best_val = v;
        best_r = r;
        best_a = c[1];
        moved = true;
      }
    }
    if (!moved) {
      sr *= 0.5;
      sa *= 0.5;
    }
  }
  return {best_val, dr, std::polar(best_r, best_a)};
}

double schwarz_pick_ratio(cplx z, cplx fz, double q) {
  if (!(q > 0.0)) throw std::invalid_argument("schwarz_pick_ratio: q must be positive");
  const double m = std::abs(fz);
  if (!(m < 1.0)) throw UndefinedRatio(m);
  const double r = std::abs(z);
  // 1 - x^q computed as -expm1(q log x) to keep accuracy near the boundary.
  auto one_minus_pow = [q](double x) { return x == 0.0 ? 1.0 : -std::expm1(q * std::log(x)); };
  return one_minus_pow(r) / one_minus_pow(m);
}

double BoundSetting::factor() const {
  if (q == 1.0) return 4.0;
  return std::exp2(q - 1.0) * q + 1.0;
}

BoundSetting make_bound_setting(double q, double norm_phi1, double norm_g) {
  if (!(q == 1.0 || q >= 2.0))
    throw std::invalid_argument("q must be 1 or >= 2, got " + format_double(q));
  if (!(norm_phi1 >= 0.0) || !(norm_g >= 0.0))
    throw std::invalid_argument("norms must be nonnegative");
  return {q, norm_phi1, norm_g};
}

double theorem2_bound(const BoundSetting& s) {
  const double denom = kTwoOverPi - s.factor() * s.data_size();
  if (!(denom > 0.0))
    throw InfeasibleBound("bound hypothesis violated: factor(q) * (||phi_1|| + ||g||/64) = " +
                          format_double(s.factor() * s.data_size()) + " >= 2/pi");
  return 1.0 / denom;
}

double heinz_pavlovic_margin(cplx z, cplx fz, cplx f0) {
  const double r2 = std::norm(z);
  const double centre = (1.0 - r2) / (1.0 + r2);
  return (4.0 / std::numbers::pi) * std::atan(std::abs(z)) - std::abs(fz - centre * f0);
}

double lemma_c_margin(double t) {
  return kTwoOverPi * (t - 1.0) + 1.0 - (4.0 / std::numbers::pi) * std::atan(t);
}

double lemma_b_margin(double y, double eps, double q) {
  return std::pow(y, q) + std::exp2(q - 1.0) * q * eps - std::pow(y + eps, q);
}

double green_gradient_integral(const Point& z, const QuadConfig& cfg) {
  if (!z.interior()) throw DomainError("green_gradient_integral: requires |z| < 1");
  const cplx zv = z;
  const cplx mean = disk_quadrature_centered(
      [&](cplx w) {
        const auto g = green_gradient(zv, w);
        return std::abs(g.dz) + std::abs(g.dzb);
      },
      zv, cfg, kExcludedRadius);
  return 2.0 * std::numbers::pi * mean.real();
}

double dp_bound_check(const Expr& F, const Point& z, const QuadConfig& cfg, std::optional<double> norm) {
  const double n = norm ? *norm : sup_norm_boundary(F).value;
  const Gradient d = poisson_integral_gradient(F, z, cfg);
  return (4.0 / std::numbers::pi) * n / (1.0 - std::norm(z.value())) - d.norm();
}

std::vector<Point> GridSpec::points() const {
  std::vector<Point> pts;
  pts.emplace_back(cplx{});
  for (int i = 1; i < n_radial; ++i) {
    const double r = r_max * i / (n_radial - 1);
    for (int k = 0; k < n_angular; ++k)
      pts.emplace_back(std::polar(r, 2.0 * std::numbers::pi * k / n_angular));
  }
  return pts;
}

DataNorms data_norms(const ProblemSpec& spec, const NormOverrides& overrides) {
  DataNorms n;
  n.phi1 = overrides.phi1 ? *overrides.phi1
                          : kNormInflation * sup_norm_boundary([&](double t) { return spec.phi1(t); }).value;
  n.g = overrides.g ? *overrides.g : kNormInflation * sup_norm_disk(spec.g).value;
  return n;
}

LipschitzEstimate lipschitz_constant_estimate(const SolutionField& field, const GridSpec& grid,
                                              const NormOverrides& overrides) {
  const ProblemSpec& spec = field.problem();
  const auto pts = grid.points();
  std::vector<double> df(pts.size());
  std::vector<double> dp(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    df[i] = field.gradient(pts[i]).norm();
    dp[i] = poisson_integral_gradient(spec.f_star, pts[i], field.config()).norm();
  });
  LipschitzEstimate est;
  est.m_hat = *std::max_element(df.begin(), df.end());
  est.l_hat = *std::max_element(dp.begin(), dp.end());
  est.norms = data_norms(spec, overrides);
  est.m_pred = est.l_hat + (2.0 + 4.0 / std::numbers::pi) * est.norms.phi1 + (23.0 / 48.0) * est.norms.g;
  for (int k = 0; k < 1024; ++k) {
    const double t = 2.0 * std::numbers::pi * k / 1024;
    est.unimodular_defect = std::max(est.unimodular_defect, std::abs(std::abs(spec.f_star.on_circle(t)) - 1.0));
  }
  return est;
}

double j_metric(cplx z1, cplx z2) {
  const double delta = std::min(1.0 - std::abs(z1), 1.0 - std::abs(z2));
  if (!(delta > 0.0)) throw DomainError("j_metric: points must lie in the open disk");
  return std::log1p(std::abs(z1 - z2) / delta);
}

double hyperbolic_distance(cplx z1, cplx z2) {
  if (!(std::norm(z1) < 1.0) || !(std::norm(z2) < 1.0))
    throw DomainError("hyperbolic_distance: points must lie in the open disk");
  const double ratio = std::abs(z1 - z2) / std::abs(1.0 - std::conj(z1) * z2);
  return 2.0 * std::atanh(ratio);
}

namespace {

// Adaptive Gauss-Legendre (16 points vs. two halves) on [a, b].
template <typename Fn>
double adaptive_gl(Fn&& fn, double a, double b, double tol, int depth) {
  const GaussLegendreRule& rule = gauss_legendre(16);
  auto panel = [&](double lo, double hi) {
    double s = 0.0;
    for (int i = 0; i < 16; ++i) s += rule.weights[i] * fn(lo + (hi - lo) * rule.nodes[i]);
    return s * (hi - lo);
  };
  const double mid = 0.5 * (a + b);
  const double whole = panel(a, b);
  const double halves = panel(a, mid) + panel(mid, b);
  if (depth <= 0 || std::abs(whole - halves) <= tol * std::max(1.0, std::abs(halves))) return halves;
  return adaptive_gl(fn, a, mid, tol, depth - 1) + adaptive_gl(fn, mid, b, tol, depth - 1);
}

}  // namespace

double hyperbolic_distance_numeric(cplx z1, cplx z2, double tol) {
  if (!(std::norm(z1) < 1.0) || !(std::norm(z2) < 1.0))
    throw DomainError("hyperbolic_distance_numeric: points must lie in the open disk");
  // The geodesic is the preimage of the radial segment [0, a] under the
  // disk automorphism T(w) = (w - z1)/(1 - conj(z1) w), a = T(z2).
  const cplx a = (z2 - z1) / (1.0 - std::conj(z1) * z2);
  if (a == cplx{}) return 0.0;
  const double scale = 1.0 - std::norm(z1);
  auto integrand = [&](double s) {
    const cplx den = 1.0 + std::conj(z1) * s * a;
    const cplx gamma = (s * a + z1) / den;
    const double speed = std::abs(a) * scale / std::norm(den);
    return 2.0 / (1.0 - std::norm(gamma)) * speed;
  };
  return adaptive_gl(integrand, 0.0, 1.0, tol, 30);
}

CorollaryConstants corollary_constants(Metric which, const LipschitzEstimate& est) {
  CorollaryConstants c;
  c.feasibility_factor = which == Metric::j ? 4.0 : 5.0;
  const double denom = kTwoOverPi - c.feasibility_factor * est.norms.data_size();
  if (!(denom > 0.0))
    throw InfeasibleBound("corollary hypothesis violated: " + format_double(c.feasibility_factor) +
                          " (||phi_1|| + ||g||/64) >= 2/pi");
  if (which == Metric::j)
    c.lipschitz = std::max(est.m_hat, kTwoOverPi) / denom;
  else
    c.lipschitz = est.m_hat / denom;
  return c;
}

Report corollary_check(const SolutionField& field, const std::vector<std::pair<Point, Point>>& pairs,
                       Metric which, const LipschitzEstimate& est, double tol) {
  const cplx f0 = field(Point(cplx{}));
  if (!(std::abs(f0) < 1e-8))
    throw std::domain_error("corollary_check: requires f(0) = 0, got |f(0)| = " +
                            format_double(std::abs(f0)));
  const CorollaryConstants c = corollary_constants(which, est);
  const std::string id = which == Metric::j ? "cor/j-metric" : "cor/hyperbolic";
  const auto metric = which == Metric::j ? j_metric : hyperbolic_distance;

  std::vector<cplx> f1(pairs.size());
  std::vector<cplx> f2(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t i) {
    f1[i] = field(pairs[i].first);
    f2[i] = field(pairs[i].second);
  });

  Report report;
  report.suite = "cor";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const cplx z1 = pairs[i].first;
    const cplx z2 = pairs[i].second;
    const double dz = metric(z1, z2);
    if (dz == 0.0) {
      report.add(flagged_row(id + "/coincident", z1, z2, 0.0));
      continue;
    }
    report.add(bound_row(id, z1, z2, metric(f1[i], f2[i]) / dz, c.lipschitz, tol));
  }
  return report;
}

}  // namespace biharm

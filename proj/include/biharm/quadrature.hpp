#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace biharm {

using cplx = std::complex<double>;

struct QuadConfig {
  int n_theta = 256;        // periodic rule nodes, power of two
  int n_r = 64;             // Gauss-Legendre radial nodes
  double adapt_tol = 1e-10; // relative tolerance for adaptive doubling
  int n_theta_max = 1 << 20;

  // Throws std::invalid_argument on a malformed configuration.
  void validate() const;
};

class NoConvergence : public std::runtime_error {
 public:
  NoConvergence(const std::string& context, cplx coarse, cplx fine, int n);

  cplx coarse() const noexcept { return coarse_; }
  cplx fine() const noexcept { return fine_; }
  int nodes() const noexcept { return n_; }

 private:
  cplx coarse_;
  cplx fine_;
  int n_;
};

// Gauss-Legendre rule mapped to [0, 1]. Nodes ascend.
struct GaussLegendreRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

// Newton iteration on P_n from Chebyshev-type initial guesses. Tables are
// built once per n and shared; the returned reference stays valid.
const GaussLegendreRule& gauss_legendre(int n);

// Excluded-disk radius for integrands whose derivative kernels are
// singular at the evaluation point.
inline constexpr double kExcludedRadius = 1e-4;

/// (1/n) sum_k fn(2 pi k / n): the (1/2pi)-normalized periodic trapezoid rule.
template <typename Fn>
cplx trapezoid_periodic(Fn&& fn, int n) {
  if (n < 1) throw std::invalid_argument("trapezoid_periodic: n must be >= 1");
  const double step = 2.0 * std::numbers::pi / n;
  cplx sum(0.0, 0.0);
  for (int k = 0; k < n; ++k) sum += cplx(fn(step * k));
  return sum / static_cast<double>(n);
}

/// Doubles the trapezoid node count from cfg.n_theta, reusing the previous
/// nodes, until successive estimates agree to adapt_tol * (1 + |estimate|).
template <typename Fn>
cplx adaptive_boundary_integral(Fn&& fn, const QuadConfig& cfg) {
  int n = cfg.n_theta;
  cplx coarse = trapezoid_periodic(fn, n);
  for (;;) {
    if (2 * n > cfg.n_theta_max)
      throw NoConvergence("adaptive_boundary_integral", coarse, coarse, n);
    const double step = 2.0 * std::numbers::pi / (2 * n);
    cplx odd(0.0, 0.0);
    for (int k = 0; k < n; ++k) odd += cplx(fn(step * (2 * k + 1)));
    const cplx fine = 0.5 * (coarse + odd / static_cast<double>(n));
    n *= 2;
    if (std::abs(fine - coarse) < cfg.adapt_tol * (1.0 + std::abs(fine))) return fine;
    if (2 * n > cfg.n_theta_max)
      throw NoConvergence("adaptive_boundary_integral", coarse, fine, n);
    coarse = fine;
  }
}

/// (1/2pi) int_D fn dA by the polar product rule: Gauss-Legendre in r on
/// [0, 1] (with the Jacobian r) times the periodic trapezoid rule in angle.
template <typename Fn>
cplx disk_quadrature(Fn&& fn, const QuadConfig& cfg) {
  const GaussLegendreRule& rule = gauss_legendre(cfg.n_r);
  const double step = 2.0 * std::numbers::pi / cfg.n_theta;
  cplx total(0.0, 0.0);
  for (int i = 0; i < cfg.n_r; ++i) {
    const double r = rule.nodes[i];
    cplx ring(0.0, 0.0);
    for (int k = 0; k < cfg.n_theta; ++k) {
      const double a = step * k;
      ring += cplx(fn(cplx(r * std::cos(a), r * std::sin(a))));
    }
    total += rule.weights[i] * r * ring / static_cast<double>(cfg.n_theta);
  }
  return total;
}

/// Distance from `center` (|center| < 1) to the unit circle along e^{i alpha}.
inline double chord_length(cplx center, cplx direction) {
  const double b = (std::conj(center) * direction).real();
  const double c = 1.0 - std::norm(center);
  const double disc = std::sqrt(b * b + c);
  return b > 0.0 ? c / (b + disc) : disc - b;
}

/// (1/2pi) int_{D minus D(center, excluded)} fn dA with polar coordinates
/// centred at `center`: w = center + rho e^{i alpha}, rho from `excluded` to
/// the unit circle. Integrands with a weak singularity at w = center
/// (rho^2 log rho and the like) become smooth in rho apart from the origin
/// endpoint, where Gauss-Legendre converges rapidly.
template <typename Fn>
auto disk_quadrature_centered(Fn&& fn, cplx center, const QuadConfig& cfg, double excluded = 0.0) {
  using Raw = std::decay_t<std::invoke_result_t<Fn&, cplx>>;
  using R = std::conditional_t<std::is_arithmetic_v<Raw>, cplx, Raw>;
  const GaussLegendreRule& rule = gauss_legendre(cfg.n_r);
  const double step = 2.0 * std::numbers::pi / cfg.n_theta;
  R total{};
  for (int k = 0; k < cfg.n_theta; ++k) {
    const double a = step * k;
    const cplx dir(std::cos(a), std::sin(a));
    const double len = chord_length(center, dir) - excluded;
    if (len <= 0.0) continue;
    R ray{};
    for (int i = 0; i < cfg.n_r; ++i) {
      const double rho = excluded + len * rule.nodes[i];
      cplx w = center + rho * dir;
      // Guard the last ulp so kernels that require |w| <= 1 accept the node.
      if (std::norm(w) > 1.0) w /= std::abs(w);
      ray += (rule.weights[i] * rho) * R(fn(w));
    }
    total += len * ray;
  }
  return R((1.0 / cfg.n_theta) * total);
}

}  // namespace biharm

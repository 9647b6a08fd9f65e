#pragma once

#include "biharm/report.hpp"
#include "biharm/solver.hpp"

#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace biharm {

inline constexpr double kTwoOverPi = 2.0 / std::numbers::pi;

// int_D (|G_z| + |G_zb|) dA(w) <= (23/48) 16 pi = 23 pi / 3 for every z.
inline constexpr double kGreenGradientBound = 23.0 * std::numbers::pi / 3.0;

// Sup-norm estimates are inflated by this factor before entering a bound.
inline constexpr double kNormInflation = 1.01;

class UndefinedRatio : public std::domain_error {
 public:
  explicit UndefinedRatio(double modulus);
  double modulus() const noexcept { return modulus_; }

 private:
  double modulus_;
};

class InfeasibleBound : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// ---- sup norms -------------------------------------------------------------

struct SupEstimate {
  double value = 0.0;
  double spacing = 0.0;  // grid spacing of the sampling before refinement
  cplx argmax{};         // boundary: e^{it*}; disk: the point itself
};

// max |F(e^{it})| over n uniform angles, refined by golden-section search
// around the discrete maximizer. Requires n >= 64.
SupEstimate sup_norm_boundary(const std::function<cplx(double)>& F, int n = 1024);
SupEstimate sup_norm_boundary(const Expr& F, int n = 1024);

// max |g| over a polar grid of the closed disk (n_grid radii including 0 and
// 1, 4 n_grid angles), refined by a compass search around the maximizer.
SupEstimate sup_norm_disk(const Expr& g, int n_grid = 64);

// ---- Schwarz-Pick type bounds ------------------------------------------------

/// (1 - |z|^q) / (1 - |f(z)|^q). Throws UndefinedRatio if |f(z)| >= 1.
double schwarz_pick_ratio(cplx z, cplx fz, double q);

struct BoundSetting {
  double q = 1.0;
  double norm_phi1 = 0.0;
  double norm_g = 0.0;

  // 4 for q = 1, 2^{q-1} q + 1 for q >= 2.
  double factor() const;
  // ||phi_1|| + ||g|| / 64
  double data_size() const { return norm_phi1 + norm_g / 64.0; }
  bool feasible() const { return factor() * data_size() < kTwoOverPi; }
};

// Rejects q outside {1} and [2, inf) and negative norms with std::invalid_argument.
BoundSetting make_bound_setting(double q, double norm_phi1, double norm_g);

/// 1 / (2/pi - factor(q) (||phi_1|| + ||g||/64)); InfeasibleBound if the
/// denominator is not positive.
double theorem2_bound(const BoundSetting& s);

// ---- scalar inequalities ---------------------------------------------------

/// (4/pi) arctan|z| - |f(z) - (1 - |z|^2)/(1 + |z|^2) f(0)|
double heinz_pavlovic_margin(cplx z, cplx fz, cplx f0);

/// (2/pi)(t - 1) + 1 - (4/pi) arctan t, nonnegative on [0, 1].
double lemma_c_margin(double t);

/// y^q + 2^{q-1} q eps - (y + eps)^q
double lemma_b_margin(double y, double eps, double q);

// ---- gradient bounds -------------------------------------------------------

/// int_D (|G_z(z,w)| + |G_zb(z,w)|) dA(w), excluding |w - z| < kExcludedRadius.
double green_gradient_integral(const Point& z, const QuadConfig& cfg);

/// (4/pi) ||F|| / (1 - |z|^2) - |D P_F(z)|. Uses the boundary sup estimate
/// unless `norm` is supplied.
double dp_bound_check(const Expr& F, const Point& z, const QuadConfig& cfg,
                      std::optional<double> norm = std::nullopt);

// ---- Lipschitz estimates ---------------------------------------------------

// Polar sampling grid: radii r_max * i / (n_radial - 1), i = 0..n_radial-1,
// and n_angular angles per nonzero radius.
struct GridSpec {
  int n_radial = 8;
  int n_angular = 32;
  double r_max = 0.95;

  std::vector<Point> points() const;
};

struct NormOverrides {
  std::optional<double> phi1;
  std::optional<double> g;
};

// Norms entering the bounds: overrides as given, else estimates times kNormInflation.
struct DataNorms {
  double phi1 = 0.0;
  double g = 0.0;
  double data_size() const { return phi1 + g / 64.0; }
};

DataNorms data_norms(const ProblemSpec& spec, const NormOverrides& overrides = {});

struct LipschitzEstimate {
  double m_hat = 0.0;   // grid sup of |Df|
  double l_hat = 0.0;   // grid sup of |D P_{f*}|
  double m_pred = 0.0;  // l_hat + (2 + 4/pi) ||phi_1|| + (23/48) ||g||
  DataNorms norms;
  double unimodular_defect = 0.0;  // max | |f*(e^{it})| - 1 | on 1024 samples
  bool unimodular() const { return unimodular_defect < 1e-9; }
};

LipschitzEstimate lipschitz_constant_estimate(const SolutionField& field, const GridSpec& grid,
                                              const NormOverrides& overrides = {});

// ---- metrics ---------------------------------------------------------------

/// log(1 + |z1 - z2| / min(1 - |z1|, 1 - |z2|))
double j_metric(cplx z1, cplx z2);

/// 2 artanh |(z1 - z2) / (1 - conj(z1) z2)|
double hyperbolic_distance(cplx z1, cplx z2);

/// Numerical integral of 2/(1 - |w|^2) |dw| along the geodesic from z1 to z2.
double hyperbolic_distance_numeric(cplx z1, cplx z2, double tol = 1e-12);

enum class Metric { j, hyperbolic };

struct CorollaryConstants {
  double feasibility_factor = 0.0;  // 4 (j) or 5 (hyperbolic)
  double lipschitz = 0.0;           // L_1 or M'
};

// Throws InfeasibleBound when factor * data_size >= 2/pi.
CorollaryConstants corollary_constants(Metric which, const LipschitzEstimate& est);

// Ratios metric(f(z1), f(z2)) / metric(z1, z2) against the corollary
// constant. Requires |f(0)| < 1e-8 (std::domain_error otherwise). Coincident
// pairs are reported as flagged rows.
Report corollary_check(const SolutionField& field, const std::vector<std::pair<Point, Point>>& pairs,
                       Metric which, const LipschitzEstimate& est, double tol = 1e-4);

}  // namespace biharm

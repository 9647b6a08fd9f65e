#pragma once

#include "biharm/expr.hpp"
#include "biharm/kernels.hpp"
#include "biharm/quadrature.hpp"

#include <cstdint>
#include <mutex>
#include <string>
#include <unordered_map>

namespace biharm {

// Data of the clamped problem
//   Lap(Lap f) = g in D,   f_zb = phi on T,   f = f_star on T.
// Boundary expressions are functions of t; if they mention z or zb those are
// bound to e^{it} and e^{-it}.
struct ProblemSpec {
  std::string name;
  Expr f_star;
  Expr phi;
  Expr g;

  // phi_1(e^{it}) = phi(e^{it}) e^{-it}
  cplx phi1(double t) const { return phi.on_circle(t) * cplx(std::cos(t), -std::sin(t)); }

  // Throws EvalError if any datum fails to evaluate at a handful of probe points.
  void validate() const;
};

ProblemSpec make_problem(std::string name, std::string_view f_star, std::string_view phi,
                         std::string_view g);

// Points with |z| above this always go through adaptive boundary quadrature.
inline constexpr double kAdaptiveRadius = 0.99;

/// Poisson extension (1/2pi) int P(z, e^{it}) F(e^{it}) dt.
cplx poisson_integral(const Expr& F, const Point& z, const QuadConfig& cfg);

/// (1/2pi) int conj(z) e^{it} F(e^{it}) (1 - |z|^2) / (1 - conj(z) e^{it})^2 dt.
/// Vanishes when F has only nonnegative Fourier modes.
cplx conjugate_term(const Expr& F, const Point& z, const QuadConfig& cfg);

/// G[g](z) = (1/2pi) int_D G(z, w) g(w) dA(w).
cplx green_potential(const Expr& g, const Point& z, const QuadConfig& cfg);

struct SolutionTerms {
  cplx poisson;      // P_{f*}
  cplx conjugate;    // conjugate term of f*
  cplx poisson_phi1; // P_{phi_1}
  cplx green;        // G[g]
  cplx total;        // poisson + conjugate - (1 - |z|^2) poisson_phi1 - green / 8
};

SolutionTerms solution_terms(const ProblemSpec& spec, const Point& z, const QuadConfig& cfg);

cplx evaluate_solution(const ProblemSpec& spec, const Point& z, const QuadConfig& cfg);

struct Gradient {
  cplx dz;
  cplx dzb;
  double norm() const { return std::abs(dz) + std::abs(dzb); }  // |Df|
};

// Wirtinger derivatives of a Poisson integral, kernel differentiated under the sign.
Gradient poisson_integral_gradient(const Expr& F, const Point& z, const QuadConfig& cfg);

// Excludes the disk |w - z| < kExcludedRadius in the Green term.
Gradient gradient_solution(const ProblemSpec& spec, const Point& z, const QuadConfig& cfg);

/// Lap^2 f at z by the 13-point stencil with spacing h, minus g(z).
cplx bilaplacian_residual(const ProblemSpec& spec, const Point& z, const QuadConfig& cfg, double h);

// Memoizes evaluate_solution for one (spec, cfg) pair. Keys are the exact
// bit patterns of the point; safe for concurrent use.
class SolutionField {
 public:
  SolutionField(ProblemSpec spec, QuadConfig cfg);

  const ProblemSpec& problem() const { return spec_; }
  const QuadConfig& config() const { return cfg_; }

  cplx operator()(const Point& z) const;
  Gradient gradient(const Point& z) const;
  std::size_t cached() const;

 private:
  struct Key {
    std::uint64_t re;
    std::uint64_t im;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };
  static Key key_of(cplx z);

  ProblemSpec spec_;
  QuadConfig cfg_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<Key, cplx, KeyHash> values_;
  mutable std::unordered_map<Key, Gradient, KeyHash> gradients_;
};

}  // namespace biharm

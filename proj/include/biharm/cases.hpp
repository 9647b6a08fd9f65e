#pragma once

#include "biharm/solver.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace biharm {

// Seeded generator. Uniforms are built from the raw 64-bit engine output so
// that a seed reproduces the same stream regardless of standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Area-uniform point with |z| < r_max.
  cplx in_disk(double r_max);
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Seed of the i-th sub-case derived from a sweep seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

using ComplexFn = std::function<cplx(cplx)>;

// A problem together with its exact solution and derived quantities.
struct ClosedFormCase {
  ProblemSpec spec;
  ComplexFn f;
  ComplexFn fz;
  ComplexFn fzb;
  ComplexFn laplacian;
  ComplexFn bilaplacian;
  std::string notes;
};

// f(z) = 2|z|^2 z^2 - |z|^6 z^2: a self-map of the disk with f(0) = 0,
// boundary data f* = e^{2it}, phi = -e^{3it}, source -1920 z^3 conj(z).
ClosedFormCase counterexample_case();

// 1 - |f(z)|^2 for the counterexample in factored form, r = |z|^2:
// (1 - r^2)^2 (1 + 2r^2 - r^4).
double counterexample_one_minus_abs_sq(double modulus);

// |Df|^2 = 64|z|^6 (1 - |z|^4)^2, valid for |z|^4 < 2/3.
double counterexample_df_sq(double modulus);

// (c/64)(1 - |z|^2)^2 with zero boundary data and constant source c.
ClosedFormCase constant_source_case(double c);

// One monomial c z^a conj(z)^b of a polynomial source term.
struct Monomial {
  cplx coeff;
  int a = 0;
  int b = 0;
};

std::string polynomial_text(std::span<const Monomial> terms);

// G[z^a conj(z)^b](0) in closed form (zero unless a == b).
double green_potential_at_origin(int a, int b);

// f* = sum_k a_k e^{ikt}, phi = sum_k b_k e^{ikt}, source g_expr.
// Throws std::invalid_argument if sum |a_k| > 1.
ProblemSpec fourier_case(std::span<const cplx> a, std::span<const cplx> b, std::string_view g_expr,
                         std::string name = "fourier");

// Random instance with analytic-type f*, small phi and polynomial g, built so
// that f(0) = 0 and |f| < 1 on the disk. The bounds are sum |b_k| and sum |c|
// over the source monomials, i.e. upper bounds for ||phi_1|| and ||g||.
struct FeasibleCase {
  ProblemSpec spec;
  std::vector<cplx> a;
  std::vector<cplx> b;
  std::vector<Monomial> g_terms;
  double phi1_bound = 0.0;
  double g_bound = 0.0;
};

FeasibleCase random_feasible_case(std::uint64_t seed);

// exp(i (t + c + sum_j a_j sin(j t + s_j))) with sum j|a_j| < 1: a
// sense-preserving homeomorphism of the circle, negative frequencies included.
Expr random_circle_homeomorphism(std::uint64_t seed);

// "counterexample", "constant:<c>", "fourier:<seed>".
// Throws std::invalid_argument for anything else.
ProblemSpec builtin_case(std::string_view name);
bool is_builtin_case(std::string_view name);

}  // namespace biharm

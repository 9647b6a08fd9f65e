#include "biharm/cases.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace biharm {

cplx Rng::in_disk(double r_max) {
  const double r = r_max * std::sqrt(uniform());
  const double a = 2.0 * std::numbers::pi * uniform();
  return {r * std::cos(a), r * std::sin(a)};
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return (x ^ (x >> 31)) & 0xffffffffULL;
}

ClosedFormCase counterexample_case() {
  ClosedFormCase c;
  c.spec = make_problem("counterexample", "z^2", "-z^3", "-1920*z^3*zb");
  c.f = [](cplx z) {
    const cplx zb = std::conj(z);
    return 2.0 * z * z * z * zb - std::pow(z, 5) * std::pow(zb, 3);
  };
  c.fz = [](cplx z) {
    const cplx zb = std::conj(z);
    return 6.0 * z * z * zb - 5.0 * std::pow(z, 4) * std::pow(zb, 3);
  };
  c.fzb = [](cplx z) {
    const cplx zb = std::conj(z);
    return 2.0 * z * z * z - 3.0 * std::pow(z, 5) * zb * zb;
  };
  c.laplacian = [](cplx z) {
    const double r2 = std::norm(z);
    return 12.0 * z * z * (2.0 - 5.0 * r2 * r2);
  };
  c.bilaplacian = [](cplx z) { return -1920.0 * z * z * z * std::conj(z); };
  c.notes =
      "Laplacian from direct differentiation: 12 z^2 (2 - 5|z|^4). "
      "The displayed closed form |Lap f| = 3|2 - 5|z|^2| does not match the finite-difference "
      "oracle; both make |Lap f| / |Df|^2 blow up as |z| -> 0.";
  return c;
}

double counterexample_one_minus_abs_sq(double modulus) {
  const double r = modulus * modulus;
  const double r2 = r * r;
  return (1.0 - r2) * (1.0 - r2) * (1.0 + 2.0 * r2 - r2 * r2);
}

double counterexample_df_sq(double modulus) {
  const double m2 = modulus * modulus;
  const double m4 = m2 * m2;
  return 64.0 * m4 * m2 * (1.0 - m4) * (1.0 - m4);
}

ClosedFormCase constant_source_case(double c) {
  ClosedFormCase out;
  const std::string source = c < 0.0 ? "-" + format_double(-c) : format_double(c);
  out.spec = make_problem("constant:" + format_double(c), "0", "0", source);
  const double k = c / 64.0;
  out.f = [k](cplx z) {
    const double d = 1.0 - std::norm(z);
    return cplx(k * d * d, 0.0);
  };
  out.fz = [k](cplx z) { return -2.0 * k * std::conj(z) * (1.0 - std::norm(z)); };
  out.fzb = [k](cplx z) { return -2.0 * k * z * (1.0 - std::norm(z)); };
  out.laplacian = [k](cplx z) { return cplx(k * (16.0 * std::norm(z) - 8.0), 0.0); };
  out.bilaplacian = [c](cplx) { return cplx(c, 0.0); };
  out.notes = "f = (c/64)(1 - |z|^2)^2 = -(1/8) G[c]";
  return out;
}

std::string polynomial_text(std::span<const Monomial> terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& m : terms) {
    if (!out.empty()) out += " + ";
    out += format_complex(m.coeff);
    if (m.a > 0) out += "*z^" + std::to_string(m.a);
    if (m.b > 0) out += "*zb^" + std::to_string(m.b);
  }
  return out;
}

double green_potential_at_origin(int a, int b) {
  if (a != b) return 0.0;
  // int_0^1 (r^2 - 1 - 2 r^2 log r) r^{2a+1} dr
  const double m = 2.0 * a + 4.0;
  return 1.0 / m - 1.0 / (2.0 * a + 2.0) + 2.0 / (m * m);
}

namespace {

std::string fourier_text(std::span<const cplx> coeffs) {
  std::string out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == cplx(0.0, 0.0)) continue;
    if (!out.empty()) out += " + ";
    out += format_complex(coeffs[k]);
    if (k > 0) out += "*z^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

cplx unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

// Random nonnegative weights scaled to sum to `total`.
std::vector<double> split(Rng& rng, std::size_t n, double total) {
  std::vector<double> w(n);
  double sum = 0.0;
  for (auto& x : w) {
    x = rng.uniform(0.05, 1.0);
    sum += x;
  }
  for (auto& x : w) x *= total / sum;
  return w;
}

}  // namespace

ProblemSpec fourier_case(std::span<const cplx> a, std::span<const cplx> b, std::string_view g_expr,
                         std::string name) {
  double budget = 0.0;
  for (cplx c : a) budget += std::abs(c);
  if (budget > 1.0 + 1e-15)
    throw std::invalid_argument("fourier_case: sum |a_k| = " + format_double(budget) + " exceeds 1");
  return make_problem(std::move(name), fourier_text(a), fourier_text(b), g_expr);
}

FeasibleCase random_feasible_case(std::uint64_t seed) {
  Rng rng(seed);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  FeasibleCase out;

  const double s_phi = rng.uniform(0.0, 0.05);
  const double s_g = rng.uniform(0.0, 0.04);

  const auto wb = split(rng, 4, s_phi);
  for (double w : wb) out.b.push_back(w * unit(two_pi * rng.uniform()));

  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b)
      if (rng.uniform() < 0.5) out.g_terms.push_back({cplx{}, a, b});
  if (out.g_terms.empty()) out.g_terms.push_back({cplx{}, 0, 0});
  const auto wg = split(rng, out.g_terms.size(), 64.0 * s_g);
  for (std::size_t i = 0; i < wg.size(); ++i) out.g_terms[i].coeff = wg[i] * unit(two_pi * rng.uniform());

  // f(0) = a_0 - P_{phi_1}(0) - G[g](0)/8 = 0, and P_{phi_1}(0) = b_1.
  cplx green0{};
  for (const auto& m : out.g_terms) green0 += m.coeff * green_potential_at_origin(m.a, m.b);
  const cplx a0 = out.b[1] + green0 / 8.0;

  const double budget = (1.0 - s_phi - s_g - std::abs(a0) - 0.02) * rng.uniform(0.5, 1.0);
  out.a.push_back(a0);
  for (double w : split(rng, 3, budget)) out.a.push_back(w * unit(two_pi * rng.uniform()));

  out.phi1_bound = s_phi;
  out.g_bound = 64.0 * s_g;
  out.spec = fourier_case(out.a, out.b, polynomial_text(out.g_terms), "fourier:" + std::to_string(seed));
  return out;
}

Expr random_circle_homeomorphism(std::uint64_t seed) {
  Rng rng(seed);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double shift = two_pi * rng.uniform();
  const double slope_budget = rng.uniform(0.2, 0.9);
  const auto w = split(rng, 3, slope_budget);
  std::string text = "exp(i*(t + " + format_double(shift);
  for (int j = 1; j <= 3; ++j) {
    const double amp = (rng.uniform() < 0.5 ? -1.0 : 1.0) * w[j - 1] / j;
    const double phase = two_pi * rng.uniform();
    text += " + " + format_double(amp) + "*sin(" + std::to_string(j) + "*t + " +
            format_double(phase) + ")";
  }
  text += "))";
  return parse(text);
}

namespace {

constexpr std::string_view kConstantPrefix = "constant:";
constexpr std::string_view kFourierPrefix = "fourier:";

}  // namespace

bool is_builtin_case(std::string_view name) {
  return name == "counterexample" || name.starts_with(kConstantPrefix) ||
         name.starts_with(kFourierPrefix);
}

ProblemSpec builtin_case(std::string_view name) {
  if (name == "counterexample") return counterexample_case().spec;
  if (name.starts_with(kConstantPrefix)) {
    const auto arg = name.substr(kConstantPrefix.size());
    double c = 0.0;
    auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), c);
    if (ec != std::errc{} || ptr != arg.data() + arg.size() || !std::isfinite(c))
      throw std::invalid_argument("bad constant in case name: " + std::string(name));
    return constant_source_case(c).spec;
  }
  if (name.starts_with(kFourierPrefix)) {
    const auto arg = name.substr(kFourierPrefix.size());
    std::uint64_t seed = 0;
    auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), seed);
    if (ec != std::errc{} || ptr != arg.data() + arg.size())
      throw std::invalid_argument("bad seed in case name: " + std::string(name));
    return random_feasible_case(seed).spec;
  }
  throw std::invalid_argument("unknown built-in case: " + std::string(name));
}

}  // namespace biharm

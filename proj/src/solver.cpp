#include "biharm/solver.hpp"

#include <Eigen/Dense>

#include <array>
#include <bit>
#include <cmath>
#include <numbers>

namespace biharm {

namespace {

// Accumulator for two simultaneous complex integrals.
struct CPair {
  cplx a{};
  cplx b{};
  CPair& operator+=(const CPair& o) {
    a += o.a;
    b += o.b;
    return *this;
  }
  friend CPair operator*(double s, const CPair& p) { return {s * p.a, s * p.b}; }
};

bool needs_adaptive(const Point& z, const QuadConfig& cfg) {
  const double r = z.modulus();
  if (r > kAdaptiveRadius) return true;
  // Trapezoid error for these kernels decays like n r^n.
  return cfg.n_theta * std::pow(r, cfg.n_theta) > cfg.adapt_tol;
}

template <typename Fn>
cplx boundary_integral(Fn&& fn, const Point& z, const QuadConfig& cfg) {
  if (needs_adaptive(z, cfg)) return adaptive_boundary_integral(fn, cfg);
  return trapezoid_periodic(fn, cfg.n_theta);
}

void require_interior(const Point& z, const char* what) {
  if (!z.interior()) throw DomainError(std::string(what) + ": requires |z| < 1");
}

template <typename Fn>
cplx annotate(const char* term, Fn&& fn) {
  try {
    return fn();
  } catch (const NoConvergence& e) {
    throw NoConvergence(std::string(term) + ": " + e.what(), e.coarse(), e.fine(), e.nodes());
  }
}

}  // namespace

void ProblemSpec::validate() const {
  for (double t : {0.0, 1.0, 2.5, 4.0, 5.5}) {
    (void)f_star.on_circle(t);
    (void)phi.on_circle(t);
  }
  if (g.uses(Var::t)) throw EvalError("source term may not depend on t", to_string(g));
  for (cplx w : {cplx(0.1, 0.2), cplx(-0.5, 0.3), cplx(0.7, -0.1)}) (void)g(w);
}

ProblemSpec make_problem(std::string name, std::string_view f_star, std::string_view phi,
                         std::string_view g) {
  ProblemSpec spec{std::move(name), parse(f_star), parse(phi), parse(g)};
  spec.validate();
  return spec;
}

cplx poisson_integral(const Expr& F, const Point& z, const QuadConfig& cfg) {
  require_interior(z, "poisson_integral");
  if (auto c = F.as_literal()) return *c;
  const cplx zv = z;
  return boundary_integral([&](double t) { return poisson_kernel(zv, t) * F.on_circle(t); }, z, cfg);
}

cplx conjugate_term(const Expr& F, const Point& z, const QuadConfig& cfg) {
  require_interior(z, "conjugate_term");
  const cplx zv = z;
  return boundary_integral([&](double t) { return conjugate_kernel(zv, t) * F.on_circle(t); }, z,
                           cfg);
}

namespace {

cplx phi1_poisson(const ProblemSpec& spec, const Point& z, const QuadConfig& cfg) {
  if (auto c = spec.phi.as_literal(); c && *c == cplx(0.0, 0.0)) return {};
  const cplx zv = z;
  return boundary_integral([&](double t) { return poisson_kernel(zv, t) * spec.phi1(t); }, z, cfg);
}

}  // namespace

cplx green_potential(const Expr& g, const Point& z, const QuadConfig& cfg) {
  require_interior(z, "green_potential");
  const cplx zv = z;
  if (auto c = g.as_literal()) {
    if (*c == cplx(0.0, 0.0)) return {};
    return *c * disk_quadrature_centered([&](cplx w) { return green_biharmonic(zv, w); }, zv, cfg);
  }
  return disk_quadrature_centered([&](cplx w) { return green_biharmonic(zv, w) * g(w); }, zv, cfg);
}

SolutionTerms solution_terms(const ProblemSpec& spec, const Point& z, const QuadConfig& cfg) {
  require_interior(z, "evaluate_solution");
  SolutionTerms s{};
  s.poisson = annotate("poisson_integral(f_star)", [&] { return poisson_integral(spec.f_star, z, cfg); });
  s.conjugate = annotate("conjugate_term(f_star)", [&] { return conjugate_term(spec.f_star, z, cfg); });
  s.poisson_phi1 = annotate("poisson_integral(phi_1)", [&] { return phi1_poisson(spec, z, cfg); });
  s.green = annotate("green_potential(g)", [&] { return green_potential(spec.g, z, cfg); });
  const double damp = 1.0 - std::norm(z.value());
  s.total = s.poisson + s.conjugate - damp * s.poisson_phi1 - s.green / 8.0;
  return s;
}

cplx evaluate_solution(const ProblemSpec& spec, const Point& z, const QuadConfig& cfg) {
  return solution_terms(spec, z, cfg).total;
}

Gradient poisson_integral_gradient(const Expr& F, const Point& z, const QuadConfig& cfg) {
  require_interior(z, "poisson_integral_gradient");
  if (F.as_literal()) return {};
  const cplx zv = z;
  const cplx dz = boundary_integral(
      [&](double t) { return poisson_kernel_gradient(zv, t).dz * F.on_circle(t); }, z, cfg);
  const cplx dzb = boundary_integral(
      [&](double t) { return poisson_kernel_gradient(zv, t).dzb * F.on_circle(t); }, z, cfg);
  return {dz, dzb};
}

Gradient gradient_solution(const ProblemSpec& spec, const Point& z, const QuadConfig& cfg) {
  if (!(z.modulus() < 1.0 - 1e-6))
    throw DomainError("gradient_solution: point too close to the boundary");
  const cplx zv = z;
  const double damp = 1.0 - std::norm(zv);

  const Gradient pf = poisson_integral_gradient(spec.f_star, z, cfg);
  Gradient cf{};
  if (!spec.f_star.as_literal()) {
    cf.dz = boundary_integral(
        [&](double t) { return conjugate_kernel_gradient(zv, t).dz * spec.f_star.on_circle(t); }, z,
        cfg);
    cf.dzb = boundary_integral(
        [&](double t) { return conjugate_kernel_gradient(zv, t).dzb * spec.f_star.on_circle(t); },
        z, cfg);
  }

  cplx p1{};
  Gradient dp1{};
  if (auto c = spec.phi.as_literal(); !(c && *c == cplx(0.0, 0.0))) {
    p1 = phi1_poisson(spec, z, cfg);
    dp1.dz = boundary_integral(
        [&](double t) { return poisson_kernel_gradient(zv, t).dz * spec.phi1(t); }, z, cfg);
    dp1.dzb = boundary_integral(
        [&](double t) { return poisson_kernel_gradient(zv, t).dzb * spec.phi1(t); }, z, cfg);
  }

  CPair green{};
  if (auto c = spec.g.as_literal(); !(c && *c == cplx(0.0, 0.0))) {
    green = disk_quadrature_centered(
        [&](cplx w) {
          const cplx gw = spec.g(w);
          const auto grad = green_gradient(zv, w);
          return CPair{gw * grad.dz, gw * grad.dzb};
        },
        zv, cfg, kExcludedRadius);
  }

  Gradient out;
  out.dz = pf.dz + cf.dz + std::conj(zv) * p1 - damp * dp1.dz - green.a / 8.0;
  out.dzb = pf.dzb + cf.dzb + zv * p1 - damp * dp1.dzb - green.b / 8.0;
  return out;
}

cplx bilaplacian_residual(const ProblemSpec& spec, const Point& z, const QuadConfig& cfg, double h) {
  if (!(h > 0.0) || !(z.modulus() + 2.0 * h < 1.0))
    throw DomainError("bilaplacian_residual: stencil leaves the disk");
  // 13-point second-order stencil for Lap^2, offsets -2..2 in x (cols) and y (rows).
  Eigen::Matrix<double, 5, 5> stencil;
  stencil << 0, 0, 1, 0, 0,
             0, 2, -8, 2, 0,
             1, -8, 20, -8, 1,
             0, 2, -8, 2, 0,
             0, 0, 1, 0, 0;
  const cplx zv = z;
  cplx acc{};
  for (int row = 0; row < 5; ++row) {
    for (int col = 0; col < 5; ++col) {
      const double c = stencil(row, col);
      if (c == 0.0) continue;
      const cplx p = zv + cplx((col - 2) * h, (row - 2) * h);
      acc += c * evaluate_solution(spec, Point(p), cfg);
    }
  }
  const double h4 = h * h * h * h;
  return acc / h4 - spec.g(zv);
}

SolutionField::SolutionField(ProblemSpec spec, QuadConfig cfg)
    : spec_(std::move(spec)), cfg_(cfg) {
  cfg_.validate();
}

SolutionField::Key SolutionField::key_of(cplx z) {
  return {std::bit_cast<std::uint64_t>(z.real()), std::bit_cast<std::uint64_t>(z.imag())};
}

std::size_t SolutionField::KeyHash::operator()(const Key& k) const noexcept {
  return std::hash<std::uint64_t>{}(k.re * 0x9e3779b97f4a7c15ULL ^ k.im);
}

cplx SolutionField::operator()(const Point& z) const {
  const Key key = key_of(z);
  {
    std::lock_guard lock(mutex_);
    if (auto it = values_.find(key); it != values_.end()) return it->second;
  }
  const cplx v = evaluate_solution(spec_, z, cfg_);
  std::lock_guard lock(mutex_);
  values_.insert_or_assign(key, v);
  return v;
}

Gradient SolutionField::gradient(const Point& z) const {
  const Key key = key_of(z);
  {
    std::lock_guard lock(mutex_);
    if (auto it = gradients_.find(key); it != gradients_.end()) return it->second;
  }
  const Gradient v = gradient_solution(spec_, z, cfg_);
  std::lock_guard lock(mutex_);
  gradients_.insert_or_assign(key, v);
  return v;
}

std::size_t SolutionField::cached() const {
  std::lock_guard lock(mutex_);
  return values_.size() + gradients_.size();
}

}  // namespace biharm

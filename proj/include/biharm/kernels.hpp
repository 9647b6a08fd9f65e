#pragma once

// Closed-form kernels of the clamped biharmonic problem on the unit disk.
// Everything here is a pure function template on the real scalar type so the
// same code can be instantiated in extended precision for cross-checks.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace biharm {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class SingularPointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <typename Scalar>
inline constexpr Scalar kBoundarySlack = Scalar(1e-12);

// Below this separation G(z, w) drops its |z-w|^2 log term (O(d^2 log d) < 1e-14).
template <typename Scalar>
inline constexpr Scalar kGreenPatchRadius = Scalar(1e-8);

// A point of the closed unit disk.
template <typename Scalar>
class DiskPoint {
 public:
  using complex_type = std::complex<Scalar>;

  DiskPoint() = default;
  DiskPoint(complex_type z) : z_(z) {  // NOLINT: implicit by intent, validated
    if (!(std::abs(z) <= Scalar(1) + kBoundarySlack<Scalar>))
      throw DomainError("point outside the closed unit disk: |z| = " +
                        std::to_string(static_cast<double>(std::abs(z))));
  }
  DiskPoint(Scalar x, Scalar y) : DiskPoint(complex_type(x, y)) {}

  complex_type value() const { return z_; }
  operator complex_type() const { return z_; }  // NOLINT
  Scalar modulus() const { return std::abs(z_); }
  bool interior() const { return std::abs(z_) < Scalar(1); }

 private:
  complex_type z_{};
};

using Point = DiskPoint<double>;

namespace detail {

template <typename Scalar>
void require_interior(const std::complex<Scalar>& z, const char* what) {
  if (!(std::norm(z) < Scalar(1)))
    throw DomainError(std::string(what) + ": requires |z| < 1, got |z| = " +
                      std::to_string(static_cast<double>(std::abs(z))));
}

template <typename Scalar>
void require_closed(const std::complex<Scalar>& z, const char* what) {
  if (!(std::abs(z) <= Scalar(1) + kBoundarySlack<Scalar>))
    throw DomainError(std::string(what) + ": point outside the closed disk");
}

}  // namespace detail

/// P(z, e^{it}) = (1 - |z|^2) / |1 - z e^{-it}|^2
template <typename Scalar>
Scalar poisson_kernel(const std::complex<Scalar>& z, Scalar t) {
  detail::require_interior(z, "poisson_kernel");
  const std::complex<Scalar> zeta(std::cos(t), -std::sin(t));
  return (Scalar(1) - std::norm(z)) / std::norm(Scalar(1) - z * zeta);
}

/// G(z, w) = |z-w|^2 log|(1 - z conj(w)) / (z - w)|^2 - (1 - |z|^2)(1 - |w|^2).
///
/// Real valued and symmetric in (z, w). The log term is dropped when
/// |z - w| < 1e-8, which at w = z gives the removable limit -(1 - |z|^2)^2.
template <typename Scalar>
Scalar green_biharmonic(const std::complex<Scalar>& z, const std::complex<Scalar>& w) {
  detail::require_closed(z, "green_biharmonic");
  detail::require_closed(w, "green_biharmonic");
  const Scalar d2 = std::norm(z - w);
  const Scalar smooth = -(Scalar(1) - std::norm(z)) * (Scalar(1) - std::norm(w));
  if (d2 < kGreenPatchRadius<Scalar> * kGreenPatchRadius<Scalar>) return smooth;
  const Scalar n2 = std::norm(Scalar(1) - z * std::conj(w));
  return d2 * std::log(n2 / d2) + smooth;
}

template <typename Scalar>
struct GreenGradient {
  std::complex<Scalar> dz;
  std::complex<Scalar> dzb;
};

/// Wirtinger derivatives of G(., w) at z:
///   G_z = (conj(z) - conj(w)) (L - 1) - |z-w|^2 conj(w) / (1 - z conj(w)) + conj(z)(1 - |w|^2)
/// with L = log|1 - z conj(w)|^2 - log|z - w|^2, and G_zb = conj(G_z) since G is real.
template <typename Scalar>
GreenGradient<Scalar> green_gradient(const std::complex<Scalar>& z, const std::complex<Scalar>& w) {
  detail::require_interior(z, "green_gradient");
  detail::require_interior(w, "green_gradient");
  const std::complex<Scalar> diff = z - w;
  const Scalar d2 = std::norm(diff);
  if (d2 == Scalar(0)) throw SingularPointError("green_gradient: z == w");
  const std::complex<Scalar> wb = std::conj(w);
  const std::complex<Scalar> one_minus = Scalar(1) - z * wb;
  const Scalar log_ratio = std::log(std::norm(one_minus) / d2);
  const std::complex<Scalar> dz = std::conj(diff) * (log_ratio - Scalar(1)) -
                                  d2 * wb / one_minus +
                                  std::conj(z) * (Scalar(1) - std::norm(w));
  return {dz, std::conj(dz)};
}

/// Density of the hyperbolic metric, 2 / (1 - |z|^2).
template <typename Scalar>
Scalar hyperbolic_density(const std::complex<Scalar>& z) {
  detail::require_interior(z, "hyperbolic_density");
  return Scalar(2) / (Scalar(1) - std::norm(z));
}

// Derivatives of the boundary kernels with respect to the evaluation point,
// used to differentiate Poisson-type integrals under the integral sign.
// With zeta = e^{it}: P = 1/(1 - z conj(zeta)) + 1/(1 - conj(z) zeta) - 1.
template <typename Scalar>
struct KernelDerivatives {
  std::complex<Scalar> dz;
  std::complex<Scalar> dzb;
};

template <typename Scalar>
KernelDerivatives<Scalar> poisson_kernel_gradient(const std::complex<Scalar>& z, Scalar t) {
  const std::complex<Scalar> zeta(std::cos(t), std::sin(t));
  const std::complex<Scalar> a = Scalar(1) - z * std::conj(zeta);
  const std::complex<Scalar> b = Scalar(1) - std::conj(z) * zeta;
  return {std::conj(zeta) / (a * a), zeta / (b * b)};
}

/// K(z, t) = conj(z) e^{it} (1 - |z|^2) / (1 - conj(z) e^{it})^2, the kernel of
/// the second term of the representation formula.
template <typename Scalar>
std::complex<Scalar> conjugate_kernel(const std::complex<Scalar>& z, Scalar t) {
  const std::complex<Scalar> zeta(std::cos(t), std::sin(t));
  const std::complex<Scalar> u = std::conj(z) * zeta;
  const std::complex<Scalar> d = Scalar(1) - u;
  return u * (Scalar(1) - std::norm(z)) / (d * d);
}

template <typename Scalar>
KernelDerivatives<Scalar> conjugate_kernel_gradient(const std::complex<Scalar>& z, Scalar t) {
  const std::complex<Scalar> zeta(std::cos(t), std::sin(t));
  const std::complex<Scalar> zb = std::conj(z);
  const std::complex<Scalar> d = Scalar(1) - zb * zeta;
  const std::complex<Scalar> d2 = d * d;
  const std::complex<Scalar> dz = -zb * zb * zeta / d2;
  const std::complex<Scalar> dzb = zeta * (Scalar(1) - Scalar(2) * z * zb) / d2 +
                                   Scalar(2) * zb * zeta * zeta * (Scalar(1) - z * zb) / (d2 * d);
  return {dz, dzb};
}

}  // namespace biharm

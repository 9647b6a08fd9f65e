#include "biharm/quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace biharm {

void QuadConfig::validate() const {
  const bool pow2 = n_theta > 0 && (n_theta & (n_theta - 1)) == 0;
  if (n_theta < 8 || !pow2)
    throw std::invalid_argument("n_theta must be a power of two >= 8, got " + std::to_string(n_theta));
  if (n_r < 4) throw std::invalid_argument("n_r must be >= 4, got " + std::to_string(n_r));
  if (!(adapt_tol > 0.0)) throw std::invalid_argument("adapt_tol must be positive");
  if (n_theta_max < n_theta) throw std::invalid_argument("n_theta_max must be >= n_theta");
}

namespace {

std::string no_convergence_message(const std::string& context, cplx coarse, cplx fine, int n) {
  std::ostringstream os;
  os.precision(17);
  os << context << ": no convergence at n = " << n << " (last estimates " << coarse << ", " << fine
     << ")";
  return os.str();
}

GaussLegendreRule build_rule(int n) {
  // Roots of P_n on [-1, 1], then mapped to [0, 1].
  GaussLegendreRule rule{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        // one more derivative evaluation at the converged root
        p0 = 1.0;
        p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        break;
      }
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // x is the i-th largest root; store ascending on [0, 1].
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.weights[n - 1 - i] = 0.5 * w;
    rule.weights[i] = 0.5 * w;
  }
  return rule;
}

}  // namespace

NoConvergence::NoConvergence(const std::string& context, cplx coarse, cplx fine, int n)
    : std::runtime_error(no_convergence_message(context, coarse, fine, n)),
      coarse_(coarse),
      fine_(fine),
      n_(n) {}

const GaussLegendreRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const GaussLegendreRule>> tables;
  std::lock_guard lock(mutex);
  auto& slot = tables[n];
  if (!slot) slot = std::make_unique<const GaussLegendreRule>(build_rule(n));
  return *slot;
}

}  // namespace biharm

#pragma once

#include "biharm/analysis.hpp"
#include "biharm/cases.hpp"
#include "biharm/report.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace biharm {

struct SuiteOptions {
  QuadConfig quad;
  std::uint64_t seed = 42;
  std::optional<double> q;      // thm2: run only this q instead of {1, 2}
  NormOverrides norms;          // thm2 / thm3 / cor
  double ratio_tol = 1e-9;      // slack on theorem ratio rows
  double lipschitz_tol = 1e-4;  // slack on Lipschitz and metric rows
};

// Individual checks. Each returns rows in a fixed order independent of the
// thread count.

// Closed-form Schwarz-Pick ratio at |z| = 1 - 2^-k, k = 3..12: strictly
// increasing, and above 1e3 at k = 12.
Report thm1_schwarz_pick_divergence();
// |Lap f| / |Df|^2 at |z| = 2^-k, k = 2..10 with finite-difference
// confirmation of the Laplacian.
Report thm1_poisson_differential();

// 50 feasible specs x 200 points, ratio <= bound for each requested q.
Report thm2_sweep(const SuiteOptions& opt);

// |G[64]| = 8 (1 - |z|^2)^2 and |G[g]| <= ||g|| (1 - |z|^2)^2 / 8.
Report green_bound_check(const SuiteOptions& opt);

// int (|G_z| + |G_zb|) dA <= 23 pi / 3 and stability under n_r doubling.
Report green_gradient_constant(const SuiteOptions& opt);

// |D P_F| <= (4/pi) ||F|| / (1 - |z|^2).
Report dp_bound_sweep(const SuiteOptions& opt);

// Seeded specs shared by the Lipschitz and metric sweeps.
std::vector<FeasibleCase> lipschitz_cases(std::uint64_t seed, int count = 10);

// M_hat <= M_pred and difference quotients <= M_hat.
Report thm3_lipschitz(const SuiteOptions& opt);

// j-metric and hyperbolic ratios against L_1 and M'.
Report corollary_sweep(const SuiteOptions& opt);

// Representation formula against the counterexample's closed form.
Report representation_check(const SuiteOptions& opt);

// Green symmetry and boundary values, Poisson mean, Green gradient against
// finite differences, constant-source solution, bilaplacian residual.
Report kernel_properties(const SuiteOptions& opt);

// lemma_c, lemma_b and Heinz-Pavlovic margins.
Report scalar_lemmas(const SuiteOptions& opt);

inline constexpr std::string_view kSuiteNames[] = {"thm1", "thm2", "thm3", "cor", "kernels", "lemmas"};

bool is_suite(std::string_view name);
// Throws std::invalid_argument for an unknown suite.
Report run_suite(std::string_view name, const SuiteOptions& opt);

}  // namespace biharm

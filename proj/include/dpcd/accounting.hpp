#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace dpcd {

// Half-open interval (lo, hi] on the 1-based time axis.
struct Interval {
  uint64_t lo = 0;
  uint64_t hi = 0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Partition of (0, t] into consecutive disjoint intervals whose lengths are
// the powers of two in the binary representation of t, largest first.
// Throws std::invalid_argument for t == 0.
std::vector<Interval> dyadic_decomposition(uint64_t t);

// Smallest power of two >= max(horizon, 1), its exponent, and the number of
// tree levels (exponent + 1). Horizons are padded to a power of two before
// building the interval tree; estimates are only emitted for t <= horizon.
size_t padded_horizon(size_t horizon);
uint32_t padded_log2(size_t horizon);
uint32_t tree_levels(size_t horizon);

// A privacy budget in one of the two accounting modes.
// Conversions between the modes use natural logarithms; base-2 logarithms
// appear only in tree-depth arithmetic.
struct PrivacyBudget {
  enum class Mode { Zcdp, ApproxDp };

  Mode mode = Mode::Zcdp;
  double rho = 0.0;      // populated in Zcdp mode
  double epsilon = 0.0;  // populated in ApproxDp mode
  double delta = 0.0;    // populated in ApproxDp mode

  static PrivacyBudget zcdp(double rho);
  static PrivacyBudget approx_dp(double epsilon, double delta);
};

// Per-node budget for the tree noise of the flip-bounded mechanism:
// rho / (4 * w * (log2(padded_horizon) + 1)). Throws if w == 0.
double bounded_mechanism_node_rho(double rho, uint64_t flip_bound, size_t horizon);

// rho-zCDP implies (rho + 2*sqrt(rho*ln(1/delta)), delta)-DP.
PrivacyBudget zcdp_to_dp(double rho, double delta);

// Budget split used when a (epsilon, delta) target is to be met through the
// zCDP accountant: rho = epsilon^2 / (16 * ln(1/delta)).
double dp_to_zcdp_budget(double epsilon, double delta);

// Sequential composition: budgets add.
double compose_zcdp(std::span<const double> budgets);

// (epsilon, delta)-DP for groups of size l: (l*eps, delta*(e^{l*eps}-1)/(e^eps-1)).
PrivacyBudget group_privacy(double epsilon, double delta, uint64_t group_size);

// Stddev of Gaussian noise that spends `rho` on a value of the given
// l2 sensitivity: sigma = sensitivity / sqrt(2*rho).
double gaussian_stddev(double l2_sensitivity, double rho);

}  // namespace dpcd

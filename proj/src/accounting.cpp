#include "dpcd/accounting.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dpcd {

std::vector<Interval> dyadic_decomposition(uint64_t t) {
  if (t == 0) throw std::invalid_argument("dyadic_decomposition: t must be >= 1");
  std::vector<Interval> out;
  uint64_t start = 0;
  for (int bit = 63; bit >= 0; --bit) {
    const uint64_t len = uint64_t(1) << bit;
    if (t & len) {
      out.push_back({start, start + len});
      start += len;
    }
  }
  return out;
}

size_t padded_horizon(size_t horizon) {
  return std::bit_ceil(horizon > 0 ? horizon : size_t(1));
}

uint32_t padded_log2(size_t horizon) {
  return uint32_t(std::countr_zero(padded_horizon(horizon)));
}

uint32_t tree_levels(size_t horizon) { return padded_log2(horizon) + 1; }

PrivacyBudget PrivacyBudget::zcdp(double rho) {
  if (!(rho > 0)) throw std::invalid_argument("budget: rho must be positive");
  PrivacyBudget b;
  b.mode = Mode::Zcdp;
  b.rho = rho;
  return b;
}

PrivacyBudget PrivacyBudget::approx_dp(double epsilon, double delta) {
  if (!(epsilon > 0)) throw std::invalid_argument("budget: epsilon must be positive");
  if (!(delta >= 0) || delta >= 1) throw std::invalid_argument("budget: delta must be in [0, 1)");
  PrivacyBudget b;
  b.mode = Mode::ApproxDp;
  b.epsilon = epsilon;
  b.delta = delta;
  return b;
}

double bounded_mechanism_node_rho(double rho, uint64_t flip_bound, size_t horizon) {
  if (!(rho > 0)) throw std::invalid_argument("node_rho: rho must be positive");
  if (flip_bound == 0) throw std::invalid_argument("node_rho: flip bound must be >= 1");
  return rho / (4.0 * double(flip_bound) * double(tree_levels(horizon)));
}

PrivacyBudget zcdp_to_dp(double rho, double delta) {
  if (rho < 0) throw std::invalid_argument("zcdp_to_dp: rho must be nonnegative");
  if (!(delta > 0) || !(delta < 1)) throw std::invalid_argument("zcdp_to_dp: delta must be in (0, 1)");
  PrivacyBudget b;
  b.mode = PrivacyBudget::Mode::ApproxDp;
  b.epsilon = rho + 2.0 * std::sqrt(rho * std::log(1.0 / delta));
  b.delta = delta;
  return b;
}

double dp_to_zcdp_budget(double epsilon, double delta) {
  if (!(epsilon > 0)) throw std::invalid_argument("dp_to_zcdp: epsilon must be positive");
  if (!(delta > 0) || !(delta < 1)) throw std::invalid_argument("dp_to_zcdp: delta must be in (0, 1)");
  return epsilon * epsilon / (16.0 * std::log(1.0 / delta));
}

double compose_zcdp(std::span<const double> budgets) {
  double total = 0.0;
  for (double b : budgets) {
    if (!(b >= 0)) throw std::invalid_argument("compose_zcdp: budgets must be nonnegative");
    total += b;
  }
  return total;
}

PrivacyBudget group_privacy(double epsilon, double delta, uint64_t group_size) {
  if (!(epsilon >= 0)) throw std::invalid_argument("group_privacy: epsilon must be nonnegative");
  if (!(delta >= 0) || delta >= 1) throw std::invalid_argument("group_privacy: delta must be in [0, 1)");
  if (group_size == 0) throw std::invalid_argument("group_privacy: group size must be >= 1");
  PrivacyBudget b;
  b.mode = PrivacyBudget::Mode::ApproxDp;
  const double l = double(group_size);
  b.epsilon = l * epsilon;
  if (delta == 0.0) {
    b.delta = 0.0;
  } else if (epsilon == 0.0) {
    // limit of (e^{l e} - 1)/(e^e - 1) as e -> 0
    b.delta = delta * l;
  } else {
    b.delta = delta * std::expm1(l * epsilon) / std::expm1(epsilon);
  }
  return b;
}

double gaussian_stddev(double l2_sensitivity, double rho) {
  if (!(l2_sensitivity >= 0)) throw std::invalid_argument("gaussian_stddev: negative sensitivity");
  if (!(rho > 0)) throw std::invalid_argument("gaussian_stddev: rho must be positive");
  return l2_sensitivity / std::sqrt(2.0 * rho);
}

}  // namespace dpcd

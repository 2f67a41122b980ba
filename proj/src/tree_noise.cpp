#include "dpcd/tree_noise.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace dpcd {

BinaryTreeNoise::BinaryTreeNoise(size_t horizon, double rho_node, NoiseSource src)
    : horizon_(horizon),
      padded_(padded_horizon(horizon)),
      levels_(tree_levels(horizon)),
      node_stddev_(0.0),
      src_(src) {
  if (horizon == 0) throw std::invalid_argument("tree noise: horizon must be >= 1");
  if (!(rho_node > 0)) throw std::invalid_argument("tree noise: rho_node must be positive");
  node_stddev_ = 1.0 / std::sqrt(rho_node);
}

double BinaryTreeNoise::node_value(uint32_t level, uint64_t index) const {
  const uint64_t key = (uint64_t(level) << 56) | index;
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  const double v = src_.keyed_gaussian(key, node_stddev_);
  cache_.emplace(key, v);
  return v;
}

double BinaryTreeNoise::prefix_noise(size_t t) const {
  if (t == 0 || t > horizon_) throw std::out_of_range("tree noise: t out of range");
  if (src_.is_zeroed()) return 0.0;
  double sum = 0.0;
  for (const Interval& iv : dyadic_decomposition(t)) {
    const uint64_t len = iv.hi - iv.lo;
    const auto level = uint32_t(std::countr_zero(len));
    sum += node_value(level, iv.hi / len);
  }
  return sum;
}

}  // namespace dpcd

#pragma once

#include <cstdint>
#include <unordered_map>

#include "dpcd/accounting.hpp"
#include "dpcd/noise.hpp"

namespace dpcd {

// Noise over the complete interval tree with padded_horizon(horizon) leaves.
// Every node (a power-of-two aligned interval) carries an independent draw
// from N(0, 1/rho_node); the prefix noise at time t sums the nodes of the
// dyadic decomposition of (0, t], at most log2(padded) + 1 of them.
//
// Node draws are keyed by (source seed, node), so a value is the same no
// matter when the node is first touched; touched values are cached. One
// instance is single-owner state.
class BinaryTreeNoise {
 public:
  BinaryTreeNoise(size_t horizon, double rho_node, NoiseSource src);

  // Z[t] for 1 <= t <= horizon.
  double prefix_noise(size_t t) const;

  size_t horizon() const { return horizon_; }
  size_t padded() const { return padded_; }
  uint32_t levels() const { return levels_; }
  double node_stddev() const { return node_stddev_; }

 private:
  double node_value(uint32_t level, uint64_t index) const;

  size_t horizon_;
  size_t padded_;
  uint32_t levels_;
  double node_stddev_;
  NoiseSource src_;
  mutable std::unordered_map<uint64_t, double> cache_;
};

}  // namespace dpcd

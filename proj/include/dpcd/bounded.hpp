#pragma once

#include <cstdint>
#include <vector>

#include "dpcd/exact.hpp"
#include "dpcd/mechanism.hpp"
#include "dpcd/tree_noise.hpp"

namespace dpcd {

// Distinct-count release under a per-element flip bound w.
//
// The mechanism keeps, per element, the net count and the running flip count,
// and releases at every step the number of elements that are present AND have
// flipped at most w times, plus interval-tree noise with per-node budget
// rho / (4 w (log2(padded) + 1)). An element whose flip count exceeds w stops
// contributing for the rest of the stream (flip counts never decrease), which
// is what keeps the release private on streams that violate the bound.
//
// Estimates are raw: unrounded and possibly negative.
class BoundedMechanism final : public Mechanism {
 public:
  BoundedMechanism(size_t horizon, double rho, uint64_t flip_bound, NoiseSource src);

  double step(const StreamEntry& e) override;
  size_t horizon() const override { return horizon_; }
  size_t time() const override { return t_; }

  uint64_t flip_bound() const { return flip_bound_; }
  double rho_node() const { return rho_node_; }

  // Current noiseless release value (sum of contributing elements).
  int64_t truncated_count() const { return truncated_; }

 private:
  size_t horizon_;
  size_t t_ = 0;
  uint64_t flip_bound_;
  double rho_node_;
  std::vector<ElementState> states_;
  int64_t truncated_ = 0;
  BinaryTreeNoise noise_;
};

// Per-level release differences of the noiseless mechanism: for level l with
// interval length 2^l, entry i is F[i*2^l] - F[(i-1)*2^l], where F[t] is the
// truncated count after t entries (F is frozen at F[T] on the padded tail).
struct LevelSums {
  size_t padded = 0;
  std::vector<std::vector<int64_t>> level;  // level[l][i-1]
};

LevelSums level_sums(const Stream& x, uint64_t flip_bound);

struct SensitivityCheck {
  uint64_t distance_sq = 0;  // squared l2 distance between the level sums
  uint64_t bound = 0;        // 8 * w * (log2(padded) + 1)
  bool ok = false;
};

// Verifies the level-sum distance bound on an item-neighbor pair. Throws if
// the streams have different lengths or are not item neighbors.
SensitivityCheck check_sensitivity(const Stream& x, const Stream& y, uint64_t flip_bound);

}  // namespace dpcd

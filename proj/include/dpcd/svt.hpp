#pragma once

#include <cstdint>

#include "dpcd/noise.hpp"

namespace dpcd {

enum class SvtAnswer : uint8_t { Above, Below };

// Sparse-vector thresholding over an adaptive sequence of sensitivity-1
// query values. The comparison threshold is 0; callers fold any offset into
// the query value.
//
// A single threshold draw Z ~ Lap(2/eps) with eps = sqrt(2*rho) is made at
// construction. Each query draws fresh Lap(4c/eps) noise and answers Above
// iff value + noise >= Z and fewer than c Aboves were answered so far; after
// the c-th Above every answer is Below, with queries still consumed.
class SparseVector {
 public:
  SparseVector(double rho, uint64_t cutoff, NoiseSource src);

  SvtAnswer query(double value);

  uint64_t above_count() const { return above_; }
  uint64_t cutoff() const { return cutoff_; }
  double epsilon() const { return epsilon_; }

 private:
  double epsilon_;
  uint64_t cutoff_;
  uint64_t above_ = 0;
  NoiseSource src_;
  double threshold_noise_;
};

// Accuracy radius 8c(ln k + ln(2c/beta)) / sqrt(2*rho): with probability at
// least 1 - beta, no Above is answered on a value below -radius and no Below
// on a value above +radius, over k queries.
double svt_accuracy_radius(uint64_t cutoff, double num_queries, double beta, double rho);

}  // namespace dpcd

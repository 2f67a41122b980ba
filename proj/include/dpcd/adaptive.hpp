#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "dpcd/bounded.hpp"
#include "dpcd/exact.hpp"
#include "dpcd/mechanism.hpp"
#include "dpcd/svt.hpp"

namespace dpcd {

struct SvtTraceRecord {
  size_t time = 0;
  double query = 0.0;
  SvtAnswer answer = SvtAnswer::Below;
  uint64_t bound_after = 0;
};

// Doubling estimate of the running maximum flip count, driven by
// sparse-vector answers to the sensitivity-1 query
//   |{u : flips(u) >= current bound}| - sqrt(current bound / query_rho).
// The bound starts at 1, only doubles, and is capped at `cap`; the query loop
// terminates because the sparse vector answers Below forever once its cutoff
// is exhausted.
class FlipBoundEstimator {
 public:
  FlipBoundEstimator(double query_rho, double svt_rho, uint64_t cutoff, uint64_t cap,
                     NoiseSource src);

  // Applies the entry to the flip state, then runs the doubling loop.
  void observe(const StreamEntry& e, std::vector<SvtTraceRecord>* trace);

  uint64_t bound() const { return bound_; }
  const PrefixTracker& tracker() const { return tracker_; }
  double svt_rho() const { return svt_rho_; }

 private:
  double query_rho_;
  double svt_rho_;
  uint64_t cap_;
  uint64_t bound_ = 1;
  PrefixTracker tracker_;
  SparseVector svt_;
};

// Number of tracked elements whose flip count is >= threshold.
size_t high_flip_count(const PrefixTracker& tracker, uint64_t threshold);

// Runs one flip-bounded instance per candidate bound 2^0..2^padded_log2, each
// with budget rho / (2 (log2(padded)+1)), plus a sparse vector with budget
// rho/2 and cutoff log2(padded); emits the estimate of the instance whose
// bound matches the current flip-bound estimate. Budgets compose to exactly
// rho.
class AdaptiveMechanism final : public Mechanism {
 public:
  AdaptiveMechanism(size_t horizon, double rho, NoiseSource src);

  double step(const StreamEntry& e) override;
  size_t horizon() const override { return horizon_; }
  size_t time() const override { return t_; }

  uint64_t flip_bound_estimate() const { return estimator_.bound(); }
  size_t instance_count() const { return instances_.size(); }
  double instance_rho() const { return instance_rho_; }
  double svt_rho() const { return estimator_.svt_rho(); }

  void set_trace_sink(std::vector<SvtTraceRecord>* sink) { trace_ = sink; }

 private:
  size_t horizon_;
  size_t t_ = 0;
  double instance_rho_;
  std::vector<BoundedMechanism> instances_;
  std::vector<double> latest_;
  FlipBoundEstimator estimator_;
  std::vector<SvtTraceRecord>* trace_ = nullptr;
};

// Block-recompute release for the sensitivity-1 distinct count: at the first
// step of every length-L block the exact count is released with Gaussian
// noise of budget rho / ceil(T/L); between block starts the last release is
// repeated, so the staleness error is at most L-1. The default block length
// is ceil(cbrt(T / rho)).
class RecomputeMechanism final : public Mechanism {
 public:
  RecomputeMechanism(size_t horizon, double rho, NoiseSource src, size_t block_length = 0);

  double step(const StreamEntry& e) override;
  size_t horizon() const override { return horizon_; }
  size_t time() const override { return t_; }

  size_t block_length() const { return block_; }
  size_t recompute_count() const { return recomputes_; }
  double recompute_rho() const { return recompute_rho_; }

 private:
  size_t horizon_;
  size_t t_ = 0;
  size_t block_;
  size_t recomputes_;
  double recompute_rho_;
  double noise_stddev_;
  double last_ = 0.0;
  PrefixTracker tracker_;
  NoiseSource src_;
};

// Adaptive mechanism with a truncated instance ladder: flip-bounded instances
// exist only for bounds 2^0..2^k with 2^k ~ min(rho^(1/3) T^(2/3), T), plus
// one recompute instance with the same budget share. Once the flip-bound
// estimate passes 2^k the output switches to the recompute instance for good.
class HybridMechanism final : public Mechanism {
 public:
  HybridMechanism(size_t horizon, double rho, NoiseSource src);

  double step(const StreamEntry& e) override;
  size_t horizon() const override { return horizon_; }
  size_t time() const override { return t_; }

  uint64_t flip_bound_estimate() const { return estimator_.bound(); }
  bool switched_to_recompute() const { return switched_; }
  double last_recompute_estimate() const { return recompute_latest_; }
  uint64_t max_bounded_bound() const { return uint64_t(1) << ladder_log2_; }
  size_t bounded_instance_count() const { return instances_.size(); }
  double instance_rho() const { return instance_rho_; }
  double svt_rho() const { return estimator_.svt_rho(); }

  void set_trace_sink(std::vector<SvtTraceRecord>* sink) { trace_ = sink; }

 private:
  size_t horizon_;
  size_t t_ = 0;
  uint32_t ladder_log2_;
  double instance_rho_;
  std::vector<BoundedMechanism> instances_;
  std::vector<double> latest_;
  std::unique_ptr<RecomputeMechanism> recompute_;
  double recompute_latest_ = 0.0;
  bool switched_ = false;
  FlipBoundEstimator estimator_;
  std::vector<SvtTraceRecord>* trace_ = nullptr;
};

}  // namespace dpcd

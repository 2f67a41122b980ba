#include "dpcd/adaptive.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace dpcd {

namespace {

constexpr uint64_t kInstanceSalt = 0x10;
constexpr uint64_t kSvtSalt = 0x5417;
constexpr uint64_t kRecomputeSalt = 0x7ec0;

}  // namespace

FlipBoundEstimator::FlipBoundEstimator(double query_rho, double svt_rho, uint64_t cutoff,
                                       uint64_t cap, NoiseSource src)
    : query_rho_(query_rho),
      svt_rho_(svt_rho),
      cap_(cap),
      svt_(svt_rho, cutoff, std::move(src)) {
  if (!(query_rho > 0)) throw std::invalid_argument("flip-bound estimator: rho must be positive");
  if (cap == 0 || std::popcount(cap) != 1) {
    throw std::invalid_argument("flip-bound estimator: cap must be a power of two");
  }
}

void FlipBoundEstimator::observe(const StreamEntry& e, std::vector<SvtTraceRecord>* trace) {
  tracker_.apply(e);
  while (true) {
    const double query = double(high_flip_count(tracker_, bound_)) - std::sqrt(double(bound_) / query_rho_);
    const SvtAnswer answer = svt_.query(query);
    if (answer == SvtAnswer::Below) {
      if (trace) trace->push_back({tracker_.time(), query, answer, bound_});
      break;
    }
    if (bound_ < cap_) bound_ *= 2;
    if (trace) trace->push_back({tracker_.time(), query, answer, bound_});
  }
}

size_t high_flip_count(const PrefixTracker& tracker, uint64_t threshold) {
  return tracker.count_with_flips_at_least(threshold);
}

AdaptiveMechanism::AdaptiveMechanism(size_t horizon, double rho, NoiseSource src)
    : horizon_(horizon),
      instance_rho_(0.0),
      estimator_(rho, rho / 2.0, padded_log2(horizon) > 0 ? padded_log2(horizon) : 1,
                 padded_horizon(horizon), src.fork(kSvtSalt)) {
  if (horizon == 0) throw std::invalid_argument("adaptive mechanism: horizon must be >= 1");
  if (!(rho > 0)) throw std::invalid_argument("adaptive mechanism: rho must be positive");
  const uint32_t levels = tree_levels(horizon);
  instance_rho_ = rho / (2.0 * double(levels));
  instances_.reserve(levels);
  for (uint32_t i = 0; i < levels; ++i) {
    instances_.emplace_back(horizon, instance_rho_, uint64_t(1) << i,
                            src.fork(kInstanceSalt + i));
  }
  latest_.assign(levels, 0.0);
}

double AdaptiveMechanism::step(const StreamEntry& e) {
  check_capacity();
  ++t_;
  for (size_t i = 0; i < instances_.size(); ++i) latest_[i] = instances_[i].step(e);
  estimator_.observe(e, trace_);
  const auto j = uint32_t(std::countr_zero(estimator_.bound()));
  return latest_[j];
}

RecomputeMechanism::RecomputeMechanism(size_t horizon, double rho, NoiseSource src,
                                       size_t block_length)
    : horizon_(horizon),
      block_(block_length),
      recomputes_(0),
      recompute_rho_(0.0),
      noise_stddev_(0.0),
      src_(std::move(src)) {
  if (horizon == 0) throw std::invalid_argument("recompute mechanism: horizon must be >= 1");
  if (!(rho > 0)) throw std::invalid_argument("recompute mechanism: rho must be positive");
  if (block_ == 0) {
    block_ = size_t(std::ceil(std::cbrt(double(horizon) / rho)));
    if (block_ == 0) block_ = 1;
  }
  if (block_ > horizon) block_ = horizon;
  recomputes_ = (horizon + block_ - 1) / block_;
  recompute_rho_ = rho / double(recomputes_);
  noise_stddev_ = gaussian_stddev(1.0, recompute_rho_);
}

double RecomputeMechanism::step(const StreamEntry& e) {
  check_capacity();
  ++t_;
  tracker_.apply(e);
  if ((t_ - 1) % block_ == 0) {
    last_ = double(tracker_.distinct_count()) + src_.gaussian(noise_stddev_);
  }
  return last_;
}

HybridMechanism::HybridMechanism(size_t horizon, double rho, NoiseSource src)
    : horizon_(horizon),
      ladder_log2_(0),
      instance_rho_(0.0),
      estimator_(rho, rho / 2.0, padded_log2(horizon) > 0 ? padded_log2(horizon) : 1,
                 padded_horizon(horizon), src.fork(kSvtSalt)) {
  if (horizon == 0) throw std::invalid_argument("hybrid mechanism: horizon must be >= 1");
  if (!(rho > 0)) throw std::invalid_argument("hybrid mechanism: rho must be positive");

  // Smallest k with 2^k >= min(rho^(1/3) T^(2/3), T), clamped to the tree depth.
  const double limit =
      std::min(std::cbrt(rho) * std::pow(double(horizon), 2.0 / 3.0), double(horizon));
  while (std::ldexp(1.0, int(ladder_log2_)) < limit && ladder_log2_ < padded_log2(horizon)) {
    ++ladder_log2_;
  }

  const size_t sub_mechanisms = size_t(ladder_log2_) + 2;  // ladder + recompute
  instance_rho_ = rho / (2.0 * double(sub_mechanisms));
  instances_.reserve(ladder_log2_ + 1);
  for (uint32_t i = 0; i <= ladder_log2_; ++i) {
    instances_.emplace_back(horizon, instance_rho_, uint64_t(1) << i,
                            src.fork(kInstanceSalt + i));
  }
  latest_.assign(instances_.size(), 0.0);
  recompute_ = std::make_unique<RecomputeMechanism>(horizon, instance_rho_,
                                                    src.fork(kRecomputeSalt));
}

double HybridMechanism::step(const StreamEntry& e) {
  check_capacity();
  ++t_;
  for (size_t i = 0; i < instances_.size(); ++i) latest_[i] = instances_[i].step(e);
  recompute_latest_ = recompute_->step(e);
  estimator_.observe(e, trace_);
  if (estimator_.bound() > max_bounded_bound()) switched_ = true;
  if (switched_) return recompute_latest_;
  return latest_[uint32_t(std::countr_zero(estimator_.bound()))];
}

}  // namespace dpcd

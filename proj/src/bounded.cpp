#include "dpcd/bounded.hpp"

#include <stdexcept>

#include "dpcd/neighbors.hpp"

namespace dpcd {

BoundedMechanism::BoundedMechanism(size_t horizon, double rho, uint64_t flip_bound, NoiseSource src)
    : horizon_(horizon),
      flip_bound_(flip_bound),
      rho_node_(bounded_mechanism_node_rho(rho, flip_bound, horizon)),
      noise_(horizon, rho_node_, src) {
  if (horizon == 0) throw std::invalid_argument("bounded mechanism: horizon must be >= 1");
}

double BoundedMechanism::step(const StreamEntry& e) {
  check_capacity();
  ++t_;
  if (e.kind != EntryKind::NoOp) {
    if (e.element >= states_.size()) states_.resize(e.element + 1);
    ElementState& st = states_[e.element];
    const bool counted_before = st.present && st.flips <= flip_bound_;
    apply_update(st, e.kind, t_);
    const bool counted_now = st.present && st.flips <= flip_bound_;
    truncated_ += int64_t(counted_now) - int64_t(counted_before);
  }
  return double(truncated_) + noise_.prefix_noise(t_);
}

LevelSums level_sums(const Stream& x, uint64_t flip_bound) {
  if (flip_bound == 0) throw std::invalid_argument("level_sums: flip bound must be >= 1");
  const size_t horizon = x.size();
  const size_t padded = padded_horizon(horizon);

  // F[t] for t in [0, padded]; the padded tail repeats F[T].
  std::vector<int64_t> release(padded + 1, 0);
  std::vector<ElementState> states(x.universe_size());
  int64_t truncated = 0;
  for (size_t t = 1; t <= padded; ++t) {
    if (t <= horizon && x[t - 1].kind != EntryKind::NoOp) {
      ElementState& st = states[x[t - 1].element];
      const bool counted_before = st.present && st.flips <= flip_bound;
      apply_update(st, x[t - 1].kind, t);
      const bool counted_now = st.present && st.flips <= flip_bound;
      truncated += int64_t(counted_now) - int64_t(counted_before);
    }
    release[t] = truncated;
  }

  LevelSums out;
  out.padded = padded;
  for (size_t len = 1; len <= padded; len <<= 1) {
    std::vector<int64_t> row(padded / len);
    for (size_t i = 1; i <= padded / len; ++i) {
      row[i - 1] = release[i * len] - release[(i - 1) * len];
    }
    out.level.push_back(std::move(row));
  }
  return out;
}

SensitivityCheck check_sensitivity(const Stream& x, const Stream& y, uint64_t flip_bound) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("check_sensitivity: streams differ in length");
  }
  if (!is_item_neighbor_pair(x, y)) {
    throw std::invalid_argument("check_sensitivity: streams are not item neighbors");
  }
  const LevelSums gx = level_sums(x, flip_bound);
  const LevelSums gy = level_sums(y, flip_bound);

  SensitivityCheck result;
  for (size_t l = 0; l < gx.level.size(); ++l) {
    for (size_t i = 0; i < gx.level[l].size(); ++i) {
      const int64_t d = gx.level[l][i] - gy.level[l][i];
      result.distance_sq += uint64_t(d * d);
    }
  }
  result.bound = 8 * flip_bound * uint64_t(tree_levels(x.size()));
  result.ok = result.distance_sq <= result.bound;
  return result;
}

}  // namespace dpcd

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dpcd/stream.hpp"

namespace dpcd {

// Running state of one element: net count, presence bit (count > 0), and the
// number of times the presence bit has toggled between adjacent time steps.
struct ElementState {
  int64_t count = 0;
  bool present = false;
  uint64_t flips = 0;
};

// Applies an insert/delete at 1-based time `t`. A presence change at t == 1
// is not a toggle: toggles count differing adjacent positions, and position
// 1 has no predecessor.
inline void apply_update(ElementState& st, EntryKind kind, size_t t) {
  st.count += kind == EntryKind::Insert ? 1 : -1;
  const bool present = st.count > 0;
  if (present != st.present && t >= 2) ++st.flips;
  st.present = present;
}

// Incremental replay of a stream prefix: per-element states, the distinct
// count, and a histogram of flip counts over all elements seen so far.
// O(1) amortized per entry (plus one ordered-map touch when a flip occurs).
class PrefixTracker {
 public:
  void apply(const StreamEntry& e);

  size_t time() const { return t_; }
  int64_t distinct_count() const { return distinct_; }
  uint64_t max_flips() const { return max_flips_; }
  size_t seen_elements() const { return seen_; }

  // Zero state for ids never touched.
  ElementState state(uint32_t id) const;
  uint64_t flips(uint32_t id) const { return state(id).flips; }

  // Number of seen elements whose flip count is >= threshold.
  // threshold == 0 counts every element seen so far.
  size_t count_with_flips_at_least(uint64_t threshold) const;

 private:
  std::vector<ElementState> states_;
  std::vector<bool> seen_flags_;
  std::map<uint64_t, size_t> flip_histogram_;  // flip count -> #elements
  uint64_t max_flips_ = 0;
  int64_t distinct_ = 0;
  size_t seen_ = 0;
  size_t t_ = 0;
};

// Number of elements with strictly positive count in x[1:t], for every t.
std::vector<int64_t> count_distinct_exact(const Stream& x);

// Presence vector of one element over all prefixes (test oracle input).
std::vector<uint8_t> presence_vector(const Stream& x, uint32_t id);

// Number of adjacent toggles in the presence vector of `token`; 0 for tokens
// that never appear. The maximum over elements is max_flip_count.
uint64_t flip_count(const Stream& x, std::string_view token);
uint64_t max_flip_count(const Stream& x);

// Ids of elements with positive count at the end of the stream.
std::vector<uint32_t> stream_indicator(const Stream& x);

enum class StreamModel { General, Strict, Likes };

struct ModelViolation {
  size_t time = 0;      // 1-based step of the violating entry
  std::string element;  // offending token
  std::string rule;
};

// General always passes. Strict fails at the first prefix where a count goes
// negative. Likes fails at the first insertion of a present element or
// deletion of an absent one.
std::optional<ModelViolation> validate_model(const Stream& x, StreamModel model);

StreamModel parse_stream_model(std::string_view name);

}  // namespace dpcd

// Brute-force reference implementations used only by tests. Everything here
// recomputes from scratch per prefix, deliberately ignoring the incremental
// state kept by the library.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dpcd/stream.hpp"

namespace dpcd::testing {

// Presence bit of element `id` after the first `t` entries.
inline bool presence_from_scratch(const Stream& x, uint32_t id, size_t t) {
  int64_t count = 0;
  for (size_t i = 0; i < t; ++i) {
    const auto& e = x[i];
    if (e.kind == EntryKind::NoOp || e.element != id) continue;
    count += e.kind == EntryKind::Insert ? 1 : -1;
  }
  return count > 0;
}

// Adjacent toggles of the presence vector of `id` over the prefix x[1:t].
inline uint64_t flips_from_scratch(const Stream& x, uint32_t id, size_t t) {
  uint64_t flips = 0;
  bool prev = false;
  for (size_t j = 1; j <= t; ++j) {
    const bool cur = presence_from_scratch(x, id, j);
    if (j >= 2 && cur != prev) ++flips;
    prev = cur;
  }
  return flips;
}

inline int64_t count_distinct_from_scratch(const Stream& x, size_t t) {
  int64_t n = 0;
  for (uint32_t id = 0; id < x.universe_size(); ++id) {
    if (presence_from_scratch(x, id, t)) ++n;
  }
  return n;
}

// Literal per-step release of the flip-bounded mechanism without noise:
// at every t and for every element v, v contributes iff its flip count over
// x[1:t] is <= bound and its count after t entries is positive.
inline std::vector<int64_t> bounded_release_from_scratch(const Stream& x, uint64_t bound) {
  std::vector<int64_t> out(x.size(), 0);
  for (size_t t = 1; t <= x.size(); ++t) {
    int64_t total = 0;
    for (uint32_t id = 0; id < x.universe_size(); ++id) {
      if (flips_from_scratch(x, id, t) <= bound && presence_from_scratch(x, id, t)) ++total;
    }
    out[t - 1] = total;
  }
  return out;
}

inline Stream random_stream(std::mt19937_64& rng, size_t horizon, size_t universe,
                            bool insertion_only = false) {
  Stream x;
  for (size_t t = 0; t < horizon; ++t) {
    const uint64_t c = rng() % (universe * (insertion_only ? 1 : 2) + 1);
    if (c == 0) {
      x.push_noop();
      continue;
    }
    const std::string token = "u" + std::to_string((c - 1) % universe + 1);
    if (insertion_only) {
      x.push_insert(token);
    } else {
      x.push((c - 1) / universe == 0 ? EntryKind::Insert : EntryKind::Delete, token);
    }
  }
  return x;
}

}  // namespace dpcd::testing

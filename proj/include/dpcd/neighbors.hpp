#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "dpcd/stream.hpp"

namespace dpcd {

enum class NeighborLevel { Event, Item };

// Seeded neighbor generation for property tests.
//
// Event level: one uniformly chosen position is flipped between its current
// entry and a no-op (a no-op position gains a random insertion or deletion of
// an element from the stream's universe). Item level: a uniformly chosen
// nonempty subset of one appearing element's entries is replaced by no-ops;
// a stream with no elements is returned unchanged.
Stream make_neighbor(const Stream& x, NeighborLevel level, uint64_t seed);

// Deterministic item-style edit: replaces the entries of `token` at the given
// 1-based positions with no-ops. Positions not referencing `token` are
// rejected.
Stream replace_entries_with_noop(const Stream& x, std::string_view token,
                                 std::span<const size_t> positions);

// True when the pair differs only at positions where exactly one side is a
// no-op and all non-no-op sides are the same stream and reference one common
// element. Writes that element's token to `element_out` when non-null (empty
// for identical streams).
bool is_item_neighbor_pair(const Stream& x, const Stream& y, std::string* element_out = nullptr);

}  // namespace dpcd

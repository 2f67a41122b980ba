#include "dpcd/neighbors.hpp"

#include <random>
#include <stdexcept>
#include <vector>

#include "dpcd/noise.hpp"

namespace dpcd {

namespace {

// Rebuilds a stream from (kind, token) pairs so the result's interner only
// holds tokens that still appear.
Stream rebuild(const std::vector<std::pair<EntryKind, std::string>>& entries) {
  Stream out;
  for (const auto& [kind, token] : entries) {
    if (kind == EntryKind::NoOp) {
      out.push_noop();
    } else {
      out.push(kind, token);
    }
  }
  return out;
}

std::vector<std::pair<EntryKind, std::string>> materialize(const Stream& x) {
  std::vector<std::pair<EntryKind, std::string>> out;
  out.reserve(x.size());
  for (const auto& e : x.entries()) {
    if (e.kind == EntryKind::NoOp) {
      out.emplace_back(EntryKind::NoOp, std::string());
    } else {
      out.emplace_back(e.kind, x.token_of(e.element));
    }
  }
  return out;
}

}  // namespace

Stream make_neighbor(const Stream& x, NeighborLevel level, uint64_t seed) {
  if (x.empty()) throw std::invalid_argument("make_neighbor: empty stream");
  std::mt19937_64 rng(mix64(seed));
  auto entries = materialize(x);

  if (level == NeighborLevel::Event) {
    const size_t pos = rng() % entries.size();
    if (entries[pos].first != EntryKind::NoOp) {
      entries[pos] = {EntryKind::NoOp, std::string()};
    } else {
      std::string token = x.universe_size() > 0
                              ? x.token_of(uint32_t(rng() % x.universe_size()))
                              : std::string("u1");
      entries[pos] = {(rng() & 1) ? EntryKind::Insert : EntryKind::Delete, std::move(token)};
    }
    return rebuild(entries);
  }

  // Item level: pick an element that appears, then a nonempty subset of its
  // entry positions.
  std::vector<uint32_t> appearing;
  {
    std::vector<bool> seen(x.universe_size(), false);
    for (const auto& e : x.entries()) {
      if (e.kind != EntryKind::NoOp && !seen[e.element]) {
        seen[e.element] = true;
        appearing.push_back(e.element);
      }
    }
  }
  if (appearing.empty()) return rebuild(entries);

  const uint32_t target = appearing[rng() % appearing.size()];
  std::vector<size_t> positions;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i].kind != EntryKind::NoOp && x[i].element == target) positions.push_back(i);
  }
  bool any = false;
  for (size_t p : positions) {
    if (rng() & 1) {
      entries[p] = {EntryKind::NoOp, std::string()};
      any = true;
    }
  }
  if (!any) entries[positions[rng() % positions.size()]] = {EntryKind::NoOp, std::string()};
  return rebuild(entries);
}

Stream replace_entries_with_noop(const Stream& x, std::string_view token,
                                 std::span<const size_t> positions) {
  const auto id = x.find(token);
  if (!id) throw std::invalid_argument("replace_entries_with_noop: unknown token");
  auto entries = materialize(x);
  for (size_t pos : positions) {
    if (pos < 1 || pos > x.size()) throw std::out_of_range("replace_entries_with_noop: bad position");
    const auto& e = x[pos - 1];
    if (e.kind == EntryKind::NoOp || e.element != *id) {
      throw std::invalid_argument("replace_entries_with_noop: position does not reference token");
    }
    entries[pos - 1] = {EntryKind::NoOp, std::string()};
  }
  return rebuild(entries);
}

bool is_item_neighbor_pair(const Stream& x, const Stream& y, std::string* element_out) {
  if (x.size() != y.size()) return false;
  std::string element;
  int noop_side = 0;  // +1: no-ops in x, -1: no-ops in y
  for (size_t i = 0; i < x.size(); ++i) {
    const auto& a = x[i];
    const auto& b = y[i];
    const bool a_noop = a.kind == EntryKind::NoOp;
    const bool b_noop = b.kind == EntryKind::NoOp;
    if (a_noop && b_noop) continue;
    if (!a_noop && !b_noop) {
      if (a.kind != b.kind || x.token_of(a.element) != y.token_of(b.element)) return false;
      continue;
    }
    // Exactly one side is a no-op at a differing position.
    const std::string& token = a_noop ? y.token_of(b.element) : x.token_of(a.element);
    const int side = a_noop ? +1 : -1;
    if (element.empty()) {
      element = token;
      noop_side = side;
    } else if (element != token || noop_side != side) {
      return false;
    }
  }
  if (element_out) *element_out = element;
  return true;
}

}  // namespace dpcd

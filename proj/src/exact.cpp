#include "dpcd/exact.hpp"

#include <stdexcept>

namespace dpcd {

void PrefixTracker::apply(const StreamEntry& e) {
  ++t_;
  if (e.kind == EntryKind::NoOp) return;

  if (e.element >= states_.size()) {
    states_.resize(e.element + 1);
    seen_flags_.resize(e.element + 1, false);
  }
  if (!seen_flags_[e.element]) {
    seen_flags_[e.element] = true;
    ++seen_;
    ++flip_histogram_[0];
  }

  ElementState& st = states_[e.element];
  const bool was_present = st.present;
  const uint64_t old_flips = st.flips;
  apply_update(st, e.kind, t_);
  if (st.present != was_present) distinct_ += st.present ? 1 : -1;
  if (st.flips != old_flips) {
    auto it = flip_histogram_.find(old_flips);
    if (--it->second == 0) flip_histogram_.erase(it);
    ++flip_histogram_[st.flips];
    if (st.flips > max_flips_) max_flips_ = st.flips;
  }
}

ElementState PrefixTracker::state(uint32_t id) const {
  if (id >= states_.size()) return ElementState{};
  return states_[id];
}

size_t PrefixTracker::count_with_flips_at_least(uint64_t threshold) const {
  size_t n = 0;
  for (auto it = flip_histogram_.lower_bound(threshold); it != flip_histogram_.end(); ++it) {
    n += it->second;
  }
  return n;
}

std::vector<int64_t> count_distinct_exact(const Stream& x) {
  std::vector<int64_t> out;
  out.reserve(x.size());
  PrefixTracker tracker;
  for (const auto& e : x.entries()) {
    tracker.apply(e);
    out.push_back(tracker.distinct_count());
  }
  return out;
}

std::vector<uint8_t> presence_vector(const Stream& x, uint32_t id) {
  std::vector<uint8_t> out;
  out.reserve(x.size());
  int64_t count = 0;
  for (const auto& e : x.entries()) {
    if (e.kind != EntryKind::NoOp && e.element == id) {
      count += e.kind == EntryKind::Insert ? 1 : -1;
    }
    out.push_back(count > 0 ? 1 : 0);
  }
  return out;
}

uint64_t flip_count(const Stream& x, std::string_view token) {
  const auto id = x.find(token);
  if (!id) return 0;
  PrefixTracker tracker;
  for (const auto& e : x.entries()) tracker.apply(e);
  return tracker.flips(*id);
}

uint64_t max_flip_count(const Stream& x) {
  PrefixTracker tracker;
  for (const auto& e : x.entries()) tracker.apply(e);
  return tracker.max_flips();
}

std::vector<uint32_t> stream_indicator(const Stream& x) {
  PrefixTracker tracker;
  for (const auto& e : x.entries()) tracker.apply(e);
  std::vector<uint32_t> out;
  for (uint32_t id = 0; id < x.universe_size(); ++id) {
    if (tracker.state(id).present) out.push_back(id);
  }
  return out;
}

std::optional<ModelViolation> validate_model(const Stream& x, StreamModel model) {
  if (model == StreamModel::General) return std::nullopt;
  std::vector<int64_t> counts(x.universe_size(), 0);
  size_t t = 0;
  for (const auto& e : x.entries()) {
    ++t;
    if (e.kind == EntryKind::NoOp) continue;
    int64_t& c = counts[e.element];
    if (model == StreamModel::Likes) {
      if (e.kind == EntryKind::Insert && c > 0) {
        return ModelViolation{t, x.token_of(e.element), "insertion of a present element"};
      }
      if (e.kind == EntryKind::Delete && c <= 0) {
        return ModelViolation{t, x.token_of(e.element), "deletion of an absent element"};
      }
    }
    c += e.kind == EntryKind::Insert ? 1 : -1;
    if (model == StreamModel::Strict && c < 0) {
      return ModelViolation{t, x.token_of(e.element), "count below zero"};
    }
  }
  return std::nullopt;
}

StreamModel parse_stream_model(std::string_view name) {
  if (name == "general") return StreamModel::General;
  if (name == "strict") return StreamModel::Strict;
  if (name == "likes") return StreamModel::Likes;
  throw std::invalid_argument("unknown stream model: " + std::string(name));
}

}  // namespace dpcd

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dpcd {

enum class EntryKind : uint8_t { Insert, Delete, NoOp };

// One stream update. `element` is a dense id assigned by the owning Stream;
// it is meaningful only when kind != NoOp.
struct StreamEntry {
  EntryKind kind = EntryKind::NoOp;
  uint32_t element = 0;
  friend bool operator==(const StreamEntry&, const StreamEntry&) = default;
};

// A fixed sequence of insertions, deletions and no-ops over an opaque token
// universe. Tokens are interned to dense ids in first-sight order, which
// makes ids stable across a serialize/parse round trip. Streams are built
// once and treated as immutable afterwards; const access is thread-safe.
class Stream {
 public:
  Stream() = default;

  uint32_t intern(std::string_view token);

  void push_insert(std::string_view token) { push(EntryKind::Insert, token); }
  void push_delete(std::string_view token) { push(EntryKind::Delete, token); }
  void push_noop() { entries_.push_back(StreamEntry{EntryKind::NoOp, 0}); }
  void push(EntryKind kind, std::string_view token);

  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const StreamEntry& operator[](size_t i) const { return entries_[i]; }
  std::span<const StreamEntry> entries() const { return entries_; }

  size_t universe_size() const { return tokens_.size(); }
  const std::string& token_of(uint32_t id) const { return tokens_.at(id); }
  std::optional<uint32_t> find(std::string_view token) const;

  bool insertion_only() const;

 private:
  std::vector<StreamEntry> entries_;
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, uint32_t> index_;
};

class StreamParseError : public std::runtime_error {
 public:
  StreamParseError(size_t line, const std::string& message);
  size_t line() const { return line_; }

 private:
  size_t line_;
};

// Line format, LF-terminated:
//   + <token>   insertion
//   - <token>   deletion
//   _           no-op
//   # ...       comment (skipped)
// Tokens are nonempty and contain no whitespace or control bytes.
// Throws StreamParseError on malformed lines and on empty input.
Stream parse_stream(std::string_view text);

// Canonical form: exactly the format accepted by parse_stream, one entry per
// line, no comments, trailing newline.
std::string serialize_stream(const Stream& x);

Stream load_stream_file(const std::string& path);
void save_stream_file(const Stream& x, const std::string& path);

}  // namespace dpcd

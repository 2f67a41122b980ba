#include "dpcd/stream.hpp"

#include <fstream>
#include <sstream>

namespace dpcd {

namespace {

bool valid_token(std::string_view token) {
  if (token.empty()) return false;
  for (unsigned char c : token) {
    if (c <= 0x20 || c == 0x7f) return false;
  }
  return true;
}

}  // namespace

uint32_t Stream::intern(std::string_view token) {
  if (!valid_token(token)) throw std::invalid_argument("stream: invalid element token");
  auto it = index_.find(std::string(token));
  if (it != index_.end()) return it->second;
  const uint32_t id = uint32_t(tokens_.size());
  tokens_.emplace_back(token);
  index_.emplace(tokens_.back(), id);
  return id;
}

void Stream::push(EntryKind kind, std::string_view token) {
  if (kind == EntryKind::NoOp) {
    push_noop();
    return;
  }
  entries_.push_back(StreamEntry{kind, intern(token)});
}

std::optional<uint32_t> Stream::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Stream::insertion_only() const {
  for (const auto& e : entries_) {
    if (e.kind == EntryKind::Delete) return false;
  }
  return true;
}

StreamParseError::StreamParseError(size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

Stream parse_stream(std::string_view text) {
  Stream out;
  size_t line_no = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    ++line_no;

    if (!line.empty() && line.front() == '#') continue;
    if (line.empty()) throw StreamParseError(line_no, "empty line");
    if (line == "_") {
      out.push_noop();
      continue;
    }
    const char head = line.front();
    if (head != '+' && head != '-') {
      throw StreamParseError(line_no, "expected '+', '-', '_' or '#', got \"" + std::string(line) + "\"");
    }
    if (line.size() < 3 || line[1] != ' ') {
      throw StreamParseError(line_no, "missing separator in \"" + std::string(line) + "\"");
    }
    std::string_view token = line.substr(2);
    if (!valid_token(token)) {
      throw StreamParseError(line_no, "bad element token \"" + std::string(token) + "\"");
    }
    out.push(head == '+' ? EntryKind::Insert : EntryKind::Delete, token);
  }
  if (out.empty()) throw StreamParseError(0, "empty stream");
  return out;
}

std::string serialize_stream(const Stream& x) {
  std::string out;
  for (const auto& e : x.entries()) {
    switch (e.kind) {
      case EntryKind::Insert:
        out += "+ ";
        out += x.token_of(e.element);
        break;
      case EntryKind::Delete:
        out += "- ";
        out += x.token_of(e.element);
        break;
      case EntryKind::NoOp:
        out += '_';
        break;
    }
    out += '\n';
  }
  return out;
}

Stream load_stream_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open stream file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_stream(buf.str());
}

void save_stream_file(const Stream& x, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write stream file: " + path);
  out << serialize_stream(x);
}

}  // namespace dpcd

#include "dpcd/reductions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "dpcd/exact.hpp"

namespace dpcd {

namespace {

std::string id_token(size_t i) { return std::to_string(i + 1); }

}  // namespace

size_t QuerySet::weight(size_t j) const {
  size_t w = 0;
  for (size_t i = 0; i < length; ++i) w += at(j, i);
  return w;
}

Stream build_inner_product_stream(const BinaryDataset& y, const QuerySet& queries) {
  if (y.rows == 0 || y.cols != 1) {
    throw std::invalid_argument("inner-product stream: dataset must be n x 1 with n >= 1");
  }
  if (queries.count > 0 && queries.length != y.rows) {
    throw std::invalid_argument("inner-product stream: query length must match dataset rows");
  }
  const size_t n = y.rows;
  Stream x;
  for (size_t i = 0; i < n; ++i) {
    if (y.at(i, 0)) {
      x.push_insert(id_token(i));
    } else {
      x.push_noop();
    }
  }
  for (size_t j = 0; j < queries.count; ++j) {
    for (size_t i = 0; i < n; ++i) {
      if (queries.at(j, i)) {
        x.push_insert(id_token(i));
      } else {
        x.push_noop();
      }
    }
    for (size_t i = 0; i < n; ++i) {
      if (queries.at(j, i)) {
        x.push_delete(id_token(i));
      } else {
        x.push_noop();
      }
    }
  }
  return x;
}

std::vector<double> inner_products_via_mechanism(const BinaryDataset& y, const QuerySet& queries,
                                                 Mechanism& m) {
  const Stream x = build_inner_product_stream(y, queries);
  if (m.horizon() - m.time() < x.size()) {
    throw std::invalid_argument("inner products: mechanism horizon too small");
  }
  const std::vector<double> trace = run_mechanism(m, x);
  const size_t n = y.rows;
  std::vector<double> out(queries.count, 0.0);
  for (size_t j = 1; j <= queries.count; ++j) {
    out[j - 1] = double(queries.weight(j - 1)) + trace[n - 1] - trace[2 * j * n - 1];
  }
  return out;
}

int64_t inner_product(const BinaryDataset& y, const QuerySet& queries, size_t j) {
  int64_t sum = 0;
  for (size_t i = 0; i < y.rows; ++i) sum += int64_t(y.at(i, 0)) * int64_t(queries.at(j, i));
  return sum;
}

IndicatorIdentity indicator_identity_check(const Stream& x1, const Stream& x2) {
  if (!x1.insertion_only() || !x2.insertion_only()) {
    throw std::invalid_argument("indicator identity: streams must be insertion-only");
  }
  // Left side: inner product of the two indicator sets.
  std::unordered_set<std::string> s1, s2;
  for (uint32_t id : stream_indicator(x1)) s1.insert(x1.token_of(id));
  for (uint32_t id : stream_indicator(x2)) s2.insert(x2.token_of(id));
  int64_t common = 0;
  for (const auto& tok : s1) common += s2.count(tok) ? 1 : 0;

  // Right side: final distinct counts of x1, x2 and their concatenation,
  // computed through the stream machinery.
  const auto final_distinct = [](const Stream& s) -> int64_t {
    if (s.empty()) return 0;
    return count_distinct_exact(s).back();
  };
  Stream concat;
  for (const auto& e : x1.entries()) {
    if (e.kind == EntryKind::NoOp) {
      concat.push_noop();
    } else {
      concat.push(e.kind, x1.token_of(e.element));
    }
  }
  for (const auto& e : x2.entries()) {
    if (e.kind == EntryKind::NoOp) {
      concat.push_noop();
    } else {
      concat.push(e.kind, x2.token_of(e.element));
    }
  }

  IndicatorIdentity out;
  out.lhs = common;
  out.rhs = final_distinct(x1) + final_distinct(x2) - final_distinct(concat);
  out.ok = out.lhs == out.rhs;
  return out;
}

Stream build_marginals_stream(const BinaryDataset& y) {
  if (y.rows == 0 || y.cols == 0) {
    throw std::invalid_argument("marginals stream: dataset must be nonempty");
  }
  Stream x;
  for (size_t j = 0; j < y.cols; ++j) {
    for (size_t i = 0; i < y.rows; ++i) {
      if (y.at(i, j)) {
        x.push_insert(id_token(i));
      } else {
        x.push_noop();
      }
    }
    for (size_t i = 0; i < y.rows; ++i) {
      if (y.at(i, j)) {
        x.push_delete(id_token(i));
      } else {
        x.push_noop();
      }
    }
  }
  return x;
}

std::vector<double> marginals_via_mechanism(const BinaryDataset& y, Mechanism& m) {
  const Stream x = build_marginals_stream(y);
  if (m.horizon() - m.time() < x.size()) {
    throw std::invalid_argument("marginals: mechanism horizon too small");
  }
  const std::vector<double> trace = run_mechanism(m, x);
  const size_t n = y.rows;
  std::vector<double> out(y.cols, 0.0);
  for (size_t j = 1; j <= y.cols; ++j) {
    out[j - 1] = trace[(2 * j - 1) * n - 1] / double(n);
  }
  return out;
}

double column_mean(const BinaryDataset& y, size_t j) {
  int64_t sum = 0;
  for (size_t i = 0; i < y.rows; ++i) sum += y.at(i, j);
  return double(sum) / double(y.rows);
}

Stream scale_stream_for_epsilon(const Stream& x, double eps) {
  if (!(eps > 0) || eps > 1) {
    throw std::invalid_argument("scale_stream_for_epsilon: eps must be in (0, 1]");
  }
  const auto copies = uint64_t(std::floor(1.0 / eps));
  Stream out;
  for (const auto& e : x.entries()) {
    if (e.kind == EntryKind::NoOp) {
      for (uint64_t c = 0; c < copies; ++c) out.push_noop();
    } else {
      const std::string& token = x.token_of(e.element);
      for (uint64_t c = 1; c <= copies; ++c) {
        out.push(e.kind, token + "." + std::to_string(c));
      }
    }
  }
  return out;
}

}  // namespace dpcd

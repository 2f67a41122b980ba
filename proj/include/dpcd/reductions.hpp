#pragma once

#include <cstdint>
#include <vector>

#include "dpcd/mechanism.hpp"
#include "dpcd/stream.hpp"

namespace dpcd {

// Row-major bit matrix.
struct BinaryDataset {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<uint8_t> bits;

  BinaryDataset() = default;
  BinaryDataset(size_t rows, size_t cols) : rows(rows), cols(cols), bits(rows * cols, 0) {}

  uint8_t at(size_t i, size_t j) const { return bits[i * cols + j]; }
  void set(size_t i, size_t j, bool v) { bits[i * cols + j] = v ? 1 : 0; }
};

// k binary query vectors of length n, row-major.
struct QuerySet {
  size_t count = 0;
  size_t length = 0;
  std::vector<uint8_t> bits;

  QuerySet() = default;
  QuerySet(size_t count, size_t length) : count(count), length(length), bits(count * length, 0) {}

  uint8_t at(size_t j, size_t i) const { return bits[j * length + i]; }
  void set(size_t j, size_t i, bool v) { bits[j * length + i] = v ? 1 : 0; }
  size_t weight(size_t j) const;  // number of ones in query j
};

// Batch inner products through a continual-release mechanism.
//
// The driver stream starts with an n-entry block inserting the dataset's
// support, followed by one 2n-entry block per query: first insertions of the
// query's support, then their deletions. Every element is net-zero after a
// query block, so query j's count can be read at time 2jn. The stream has
// maximum flip count at most 2k.
Stream build_inner_product_stream(const BinaryDataset& y, const QuerySet& queries);

// b[j] = weight(q_j) + r[n] - r[2jn] from the mechanism's release trace r.
// With a mechanism whose trace error is at most alpha in l-infinity, each
// estimate is within 2*alpha of the true inner product.
std::vector<double> inner_products_via_mechanism(const BinaryDataset& y, const QuerySet& queries,
                                                 Mechanism& m);

int64_t inner_product(const BinaryDataset& y, const QuerySet& queries, size_t j);

struct IndicatorIdentity {
  int64_t lhs = 0;  // <indicator(x1), indicator(x2)>
  int64_t rhs = 0;  // |x1| + |x2| - |x1 concat x2|, as distinct counts
  bool ok = false;
};

// Checks <h1, h2> = ||h1||_0 + ||h2||_0 - ||h12||_0 on insertion-only
// streams. Throws if either stream contains a deletion.
IndicatorIdentity indicator_identity_check(const Stream& x1, const Stream& x2);

// Batch column means through a continual-release mechanism: one 2n-entry
// block per column, insertions of the column's support then their deletions.
// Maximum flip count at most 2d; the stream is valid in the likes model.
Stream build_marginals_stream(const BinaryDataset& y);

// b[j] = r[(2j-1)n] / n; trace error alpha gives column-mean error alpha/n.
std::vector<double> marginals_via_mechanism(const BinaryDataset& y, Mechanism& m);

double column_mean(const BinaryDataset& y, size_t j);

// Replaces every update by copies * consecutive updates of fresh per-copy
// elements (copies = floor(1/eps)); no-ops expand to copies * no-ops. The
// scaled stream's distinct count at time t*copies is copies times the
// original count at time t. Requires eps in (0, 1].
Stream scale_stream_for_epsilon(const Stream& x, double eps);

}  // namespace dpcd

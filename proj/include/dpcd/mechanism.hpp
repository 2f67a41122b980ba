#pragma once

#include <cstddef>
#include <vector>

#include "dpcd/exact.hpp"
#include "dpcd/stream.hpp"

namespace dpcd {

// A continual-release mechanism: consumes one stream entry per call and
// returns the estimate for that time step. One instance processes one stream;
// the dense element ids in the entries must come from that stream. Calling
// step past the horizon throws std::out_of_range.
class Mechanism {
 public:
  virtual ~Mechanism() = default;

  virtual double step(const StreamEntry& e) = 0;
  virtual size_t horizon() const = 0;
  virtual size_t time() const = 0;

 protected:
  void check_capacity() const;
};

// Feeds the whole stream and returns the per-step estimates.
std::vector<double> run_mechanism(Mechanism& m, const Stream& x);

// Noise-free reference mechanism: emits the exact distinct count. Used as the
// plug-in oracle for the batch reductions and in equivalence tests.
class ExactOracleMechanism final : public Mechanism {
 public:
  explicit ExactOracleMechanism(size_t horizon);

  double step(const StreamEntry& e) override;
  size_t horizon() const override { return horizon_; }
  size_t time() const override { return tracker_.time(); }

 private:
  size_t horizon_;
  PrefixTracker tracker_;
};

}  // namespace dpcd

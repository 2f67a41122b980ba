#include <stdexcept>
#include <cmath>
#include <random>

#include "doctest.h"
#include "dpcd/adaptive.hpp"
#include "dpcd/harness.hpp"
#include "oracles.hpp"

using namespace dpcd;

namespace {

// Alternating insert/delete runs: `elements` elements, each toggled `flips`
// times (run length flips+1), back to back.
Stream alternating_runs(size_t elements, uint64_t flips) {
  Stream x;
  for (size_t e = 0; e < elements; ++e) {
    const std::string token = "a" + std::to_string(e + 1);
    for (uint64_t i = 0; i <= flips; ++i) {
      x.push(i % 2 == 0 ? EntryKind::Insert : EntryKind::Delete, token);
    }
  }
  return x;
}

}  // namespace

TEST_CASE("zero-noise trace of the three-step example") {
  const Stream x = parse_stream("+ a\n+ b\n- a\n");
  AdaptiveMechanism m(x.size(), 1.0, NoiseSource::zeroed());
  std::vector<SvtTraceRecord> trace;
  m.set_trace_sink(&trace);

  CHECK(m.step(x[0]) == 1.0);
  CHECK(m.flip_bound_estimate() == 1);
  // b's first insertion at t=2 flips its presence vector (0,1), so the query
  // at bound 1 is 1 - sqrt(1/1) = 0, answered Above: one doubling, then stop.
  CHECK(m.step(x[1]) == 2.0);
  CHECK(m.flip_bound_estimate() == 2);
  CHECK(m.step(x[2]) == 1.0);
  CHECK(m.flip_bound_estimate() == 2);

  REQUIRE(trace.size() == 4);
  CHECK(trace[0].answer == SvtAnswer::Below);
  CHECK(trace[1].answer == SvtAnswer::Above);
  CHECK(trace[1].query == doctest::Approx(0.0));
  CHECK(trace[1].bound_after == 2);
  CHECK(trace[2].answer == SvtAnswer::Below);
  CHECK(trace[3].answer == SvtAnswer::Below);
}

TEST_CASE("all no-ops keep the bound at one and the output at zero") {
  AdaptiveMechanism m(8, 1.0, NoiseSource::zeroed());
  const StreamEntry noop{};
  for (int t = 0; t < 8; ++t) {
    CHECK(m.step(noop) == 0.0);
    CHECK(m.flip_bound_estimate() == 1);
  }
}

TEST_CASE("a single high-flip element cannot push the bound past two") {
  // With zero noise the query at bound 2 is 1 - sqrt(2) < 0 no matter how
  // often the lone element toggles.
  const Stream x = alternating_runs(1, 16);
  AdaptiveMechanism m(x.size(), 1.0, NoiseSource::zeroed());
  run_mechanism(m, x);
  CHECK(m.flip_bound_estimate() == 2);
}

TEST_CASE("many high-flip elements drive the bound to twice the maximum") {
  const Stream x = alternating_runs(4, 16);  // T = 68
  AdaptiveMechanism m(x.size(), 1.0, NoiseSource::zeroed());
  run_mechanism(m, x);
  CHECK(m.flip_bound_estimate() == 32);
}

TEST_CASE("budget ledger composes to rho exactly") {
  for (double rho : {0.1, 1.0}) {
    for (size_t horizon : {size_t(256), size_t(4096)}) {
      AdaptiveMechanism m(horizon, rho, NoiseSource::zeroed());
      std::vector<double> parts(m.instance_count(), m.instance_rho());
      parts.push_back(m.svt_rho());
      CHECK(compose_zcdp(parts) == doctest::Approx(rho).epsilon(1e-12));
    }
  }
}

TEST_CASE("zero-noise bound never exceeds twice the running maximum") {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 150; ++rep) {
    const Stream x = testing::random_stream(rng, 2 + rng() % 16, 1 + rng() % 3);
    AdaptiveMechanism m(x.size(), 1.0, NoiseSource::zeroed());
    PrefixTracker exact;
    uint64_t previous = 1;
    const uint64_t padded = padded_horizon(x.size());
    for (const auto& e : x.entries()) {
      m.step(e);
      exact.apply(e);
      const uint64_t bound = m.flip_bound_estimate();
      CHECK(bound <= 2 * std::max<uint64_t>(exact.max_flips(), 1));
      CHECK((bound & (bound - 1)) == 0);  // power of two
      CHECK(bound >= previous);           // nondecreasing
      CHECK(bound <= padded);
      previous = bound;
    }
  }
}

TEST_CASE("noisy bound stays a power of two within the padded horizon") {
  std::mt19937_64 rng(26);
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const Stream x = testing::random_stream(rng, 40, 4);
    AdaptiveMechanism m(x.size(), 1.0, NoiseSource::seeded(seed));
    uint64_t previous = 1;
    for (const auto& e : x.entries()) {
      m.step(e);
      const uint64_t bound = m.flip_bound_estimate();
      CHECK((bound & (bound - 1)) == 0);
      CHECK(bound >= previous);
      CHECK(bound <= padded_horizon(x.size()));
      previous = bound;
    }
  }
}

TEST_CASE("zero-noise output error is bounded by the high-flip element count") {
  std::mt19937_64 rng(22);
  for (int rep = 0; rep < 100; ++rep) {
    const Stream x = testing::random_stream(rng, 2 + rng() % 20, 1 + rng() % 3);
    AdaptiveMechanism m(x.size(), 1.0, NoiseSource::zeroed());
    PrefixTracker exact;
    for (const auto& e : x.entries()) {
      const double est = m.step(e);
      exact.apply(e);
      const auto beyond = double(high_flip_count(exact, m.flip_bound_estimate() + 1));
      CHECK(std::abs(est - double(exact.distinct_count())) <= beyond);
    }
  }
}

TEST_CASE("recompute with block one and no noise is exact") {
  std::mt19937_64 rng(23);
  const Stream x = testing::random_stream(rng, 40, 5);
  RecomputeMechanism m(x.size(), 1.0, NoiseSource::zeroed(), 1);
  const auto got = run_mechanism(m, x);
  const auto exact = count_distinct_exact(x);
  for (size_t t = 0; t < x.size(); ++t) CHECK(got[t] == double(exact[t]));
}

TEST_CASE("recompute repeats between block starts") {
  const Stream x = parse_stream("+ a\n+ b\n");
  RecomputeMechanism m(x.size(), 1.0, NoiseSource::zeroed(), 2);
  CHECK(run_mechanism(m, x) == std::vector<double>{1, 1});
}

TEST_CASE("recompute staleness is at most block length minus one") {
  std::mt19937_64 rng(24);
  for (size_t block : {size_t(2), size_t(5), size_t(9)}) {
    const Stream x = testing::random_stream(rng, 100, 6);
    RecomputeMechanism m(x.size(), 1.0, NoiseSource::zeroed(), block);
    const auto got = run_mechanism(m, x);
    const auto exact = count_distinct_exact(x);
    for (size_t t = 0; t < x.size(); ++t) {
      CHECK(std::abs(got[t] - double(exact[t])) <= double(block - 1));
    }
  }
}

TEST_CASE("recompute splits its budget over the recomputations") {
  RecomputeMechanism m(4096, 1.0, NoiseSource::zeroed());
  CHECK(m.block_length() == 16);  // ceil(cbrt(4096 / 1))
  CHECK(m.recompute_count() == 256);
  CHECK(m.recompute_rho() * double(m.recompute_count()) == doctest::Approx(1.0));
}

TEST_CASE("hybrid matches adaptive on low-flip streams with no noise") {
  std::mt19937_64 rng(25);
  for (int rep = 0; rep < 60; ++rep) {
    const Stream x = testing::random_stream(rng, 2 + rng() % 30, 1 + rng() % 4);
    AdaptiveMechanism a(x.size(), 1.0, NoiseSource::zeroed());
    HybridMechanism h(x.size(), 1.0, NoiseSource::zeroed());
    if (max_flip_count(x) > h.max_bounded_bound() / 2) continue;  // keep within the ladder
    for (const auto& e : x.entries()) {
      const double ea = a.step(e);
      const double eh = h.step(e);
      CHECK(ea == eh);
      CHECK(a.flip_bound_estimate() == h.flip_bound_estimate());
    }
    CHECK(!h.switched_to_recompute());
  }
}

TEST_CASE("hybrid budget ledger composes to rho exactly") {
  for (double rho : {0.1, 1.0}) {
    HybridMechanism h(1024, rho, NoiseSource::zeroed());
    // ladder instances + one recompute share, each instance_rho, plus svt.
    std::vector<double> parts(h.bounded_instance_count() + 1, h.instance_rho());
    parts.push_back(h.svt_rho());
    CHECK(compose_zcdp(parts) == doctest::Approx(rho).epsilon(1e-12));
  }
}

TEST_CASE("hybrid ladder tops out near rho^(1/3) T^(2/3)") {
  HybridMechanism h(4096, 1.0, NoiseSource::zeroed());
  CHECK(h.max_bounded_bound() == 256);  // 4096^(2/3)
  CHECK(h.bounded_instance_count() == 9);
}

TEST_CASE("hybrid switches to the recompute instance for good") {
  GeneratorSpec g;
  g.model = GenModel::AdversarialFlip;
  g.horizon = 64;
  g.universe = 64;
  g.target_flips = 8;
  g.seed = 3;
  const Stream x = generate(g);
  HybridMechanism h(x.size(), 1.0, NoiseSource::seeded(1));
  REQUIRE(h.max_bounded_bound() == 16);

  bool switched = false;
  for (const auto& e : x.entries()) {
    const double out = h.step(e);
    if (h.switched_to_recompute()) {
      switched = true;
      CHECK(out == h.last_recompute_estimate());
    }
  }
  CHECK(switched);
  CHECK(h.flip_bound_estimate() > h.max_bounded_bound());
}

TEST_CASE("all no-ops leave the hybrid at zero") {
  HybridMechanism h(8, 1.0, NoiseSource::zeroed());
  const StreamEntry noop{};
  for (int t = 0; t < 8; ++t) CHECK(h.step(noop) == 0.0);
  CHECK(!h.switched_to_recompute());
}

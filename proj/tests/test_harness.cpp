#include <stdexcept>
#include <sstream>

#include "doctest.h"
#include "dpcd/exact.hpp"
#include "dpcd/harness.hpp"

using namespace dpcd;

TEST_CASE("adversarial generator hits the flip target") {
  GeneratorSpec spec;
  spec.model = GenModel::AdversarialFlip;
  spec.horizon = 8;
  spec.universe = 1;
  spec.target_flips = 7;
  const Stream x = generate(spec);
  CHECK(serialize_stream(x) == "+ e1\n- e1\n+ e1\n- e1\n+ e1\n- e1\n+ e1\n- e1\n");
  CHECK(max_flip_count(x) == 7);

  for (uint64_t w : {1u, 3u, 10u, 50u}) {
    GeneratorSpec s;
    s.model = GenModel::AdversarialFlip;
    s.horizon = 64;
    s.universe = 8;
    s.target_flips = w;
    const uint64_t achieved = max_flip_count(generate(s));
    CHECK(achieved >= w / 2);
    CHECK(achieved <= w);
  }
}

TEST_CASE("generator argument validation") {
  GeneratorSpec bad;
  bad.horizon = 0;
  CHECK_THROWS_AS(generate(bad), std::invalid_argument);

  GeneratorSpec infeasible;
  infeasible.model = GenModel::AdversarialFlip;
  infeasible.horizon = 4;
  infeasible.target_flips = 5;
  CHECK_THROWS_AS(generate(infeasible), std::invalid_argument);
}

TEST_CASE("generated streams satisfy their declared model") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    GeneratorSpec likes;
    likes.model = GenModel::LikesRandom;
    likes.horizon = 200;
    likes.universe = 6;
    likes.seed = seed;
    CHECK(!validate_model(generate(likes), StreamModel::Likes));

    GeneratorSpec phase;
    phase.model = GenModel::PhaseBatch;
    phase.horizon = 100;
    phase.universe = 5;
    phase.seed = seed;
    CHECK(!validate_model(generate(phase), StreamModel::Likes));
  }
}

TEST_CASE("generation is deterministic in the seed") {
  GeneratorSpec spec;
  spec.model = GenModel::UniformTurnstile;
  spec.horizon = 128;
  spec.universe = 9;
  spec.seed = 77;
  CHECK(serialize_stream(generate(spec)) == serialize_stream(generate(spec)));
  spec.seed = 78;
  const Stream other = generate(spec);
  GeneratorSpec base;
  base = spec;
  base.seed = 77;
  CHECK(serialize_stream(generate(base)) != serialize_stream(other));
}

TEST_CASE("measure_error compares against the exact counts") {
  const Stream x = parse_stream("+ a\n+ b\n- a\n");
  const std::vector<double> exact = {1, 2, 1};
  CHECK(measure_error(x, exact).linf == 0.0);

  std::vector<double> shifted = exact;
  shifted[1] += 3.0;
  const auto trace = measure_error(x, shifted);
  CHECK(trace.linf == 3.0);
  CHECK(trace.abs_error == std::vector<double>{0, 3, 0});

  CHECK_THROWS_AS(measure_error(x, std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("quantiles interpolate") {
  const std::vector<double> v = {1, 2, 3, 4};
  CHECK(quantile_sorted(v, 0.0) == 1.0);
  CHECK(quantile_sorted(v, 1.0) == 4.0);
  CHECK(quantile_sorted(v, 0.5) == doctest::Approx(2.5));
  CHECK(quantile_sorted(v, 0.95) == doctest::Approx(3.85));
}

TEST_CASE("bench rows are deterministic and zero for the exact mechanism") {
  BenchConfig config;
  config.mechanism.kind = MechanismKind::Exact;
  config.flip_grid = {2, 4};
  config.trials = 3;
  config.horizon = 64;
  config.seed = 5;
  config.threads = 2;
  const auto rows = bench_sweep(config);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    CHECK(r.median_linf == 0.0);
    CHECK(r.p95_linf == 0.0);
  }

  std::ostringstream a, b;
  write_bench_csv(a, rows);
  write_bench_csv(b, bench_sweep(config));
  CHECK(a.str() == b.str());
  CHECK(a.str().substr(0, 38) == "w,trials,rho,T,median_linf,p95_linf,se");
}

TEST_CASE("zeroed bench of the bounded mechanism has zero error") {
  // The adversarial stream's flip counts stay within the grid bound, so the
  // noiseless release is exact.
  BenchConfig config;
  config.mechanism.kind = MechanismKind::Bounded;
  config.flip_grid = {4};
  config.trials = 1;
  config.horizon = 48;
  config.seed = 12;
  config.zeroed = true;
  const auto rows = bench_sweep(config);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].median_linf == 0.0);
  CHECK(rows[0].p95_linf == 0.0);
}

TEST_CASE("bench rows repeat bitwise for a noisy mechanism") {
  BenchConfig config;
  config.mechanism.kind = MechanismKind::Bounded;
  config.mechanism.rho = 1.0;
  config.flip_grid = {2};
  config.trials = 4;
  config.horizon = 32;
  config.seed = 9;
  config.threads = 3;
  std::ostringstream a, b;
  write_bench_csv(a, bench_sweep(config));
  write_bench_csv(b, bench_sweep(config));
  CHECK(a.str() == b.str());
}

TEST_CASE("name parsing round-trips") {
  for (const char* name : {"uniform-turnstile", "likes-random", "adversarial-flip", "phase-batch"}) {
    CHECK(gen_model_name(parse_gen_model(name)) == name);
  }
  for (const char* name : {"bounded", "adaptive", "hybrid", "recompute", "exact"}) {
    CHECK(mechanism_kind_name(parse_mechanism_kind(name)) == name);
  }
  CHECK_THROWS_AS(parse_gen_model("nope"), std::invalid_argument);
  CHECK_THROWS_AS(parse_mechanism_kind("nope"), std::invalid_argument);
}

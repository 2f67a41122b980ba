#pragma once

#include <cstdint>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dpcd/mechanism.hpp"
#include "dpcd/noise.hpp"
#include "dpcd/stream.hpp"

namespace dpcd {

enum class GenModel { UniformTurnstile, LikesRandom, AdversarialFlip, PhaseBatch };

GenModel parse_gen_model(std::string_view name);
std::string_view gen_model_name(GenModel model);

// Synthetic workload description. Deterministic: (spec, seed) fixes the
// stream.
//   uniform-turnstile  entries uniform over all insertions, deletions, no-op
//   likes-random       random walk that stays valid in the likes model
//   adversarial-flip   alternating insert/delete runs; hits a target flip
//                      count in [target/2, target]
//   phase-batch        repeated insert-then-delete phases of random subsets
struct GeneratorSpec {
  GenModel model = GenModel::UniformTurnstile;
  size_t horizon = 0;
  size_t universe = 1;
  uint64_t target_flips = 1;  // adversarial-flip only
  uint64_t seed = 0;
};

Stream generate(const GeneratorSpec& spec);

// Per-step comparison of a release trace against the exact distinct counts.
struct EstimateTrace {
  std::vector<int64_t> truth;
  std::vector<double> estimate;
  std::vector<double> abs_error;
  double linf = 0.0;
};

EstimateTrace measure_error(const Stream& x, std::span<const double> estimates);

// Linear-interpolation quantile of a sorted sample, p in [0, 1].
double quantile_sorted(std::span<const double> sorted, double p);

enum class MechanismKind { Bounded, Adaptive, Hybrid, Recompute, Exact };

MechanismKind parse_mechanism_kind(std::string_view name);
std::string_view mechanism_kind_name(MechanismKind kind);

struct MechanismSpec {
  MechanismKind kind = MechanismKind::Bounded;
  double rho = 1.0;
  uint64_t flip_bound = 1;  // bounded only
  size_t block_length = 0;  // recompute only; 0 = automatic
};

std::unique_ptr<Mechanism> make_mechanism(const MechanismSpec& spec, size_t horizon,
                                          NoiseSource src);

// Error sweep over a flip-count grid on adversarial-flip streams. Each grid
// point runs `trials` independent mechanisms (trial seed = base seed + trial
// index) on a fixed stream and reports median and 95th-percentile l-infinity
// error. Trials run in parallel; rows are keyed, so the output is
// order-independent and byte-deterministic for a fixed configuration.
struct BenchConfig {
  MechanismSpec mechanism;
  std::vector<uint64_t> flip_grid;
  size_t trials = 1;
  size_t horizon = 0;
  uint64_t seed = 0;
  size_t threads = 0;             // 0 = hardware concurrency
  bool zeroed = false;            // run every trial on the zeroed noise source
  bool fixed_flip_bound = false;  // keep mechanism.flip_bound instead of tracking the grid
};

struct BenchRow {
  uint64_t flip_target = 0;
  size_t trials = 0;
  double rho = 0.0;
  size_t horizon = 0;
  double median_linf = 0.0;
  double p95_linf = 0.0;
  uint64_t seed = 0;
};

std::vector<BenchRow> bench_sweep(const BenchConfig& config);

// Fixed 6-significant-digit CSV, LF line endings.
void write_bench_csv(std::ostream& out, std::span<const BenchRow> rows);
std::string format_number(double v);

}  // namespace dpcd

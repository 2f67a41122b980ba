#include "dpcd/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <thread>

#include "dpcd/adaptive.hpp"
#include "dpcd/bounded.hpp"
#include "dpcd/exact.hpp"

namespace dpcd {

namespace {

std::string element_token(size_t i) { return "e" + std::to_string(i + 1); }

Stream generate_uniform(const GeneratorSpec& spec) {
  std::mt19937_64 rng(mix64(spec.seed));
  Stream x;
  // Uniform over the 2|U|+1 possible entries.
  const uint64_t choices = 2 * uint64_t(spec.universe) + 1;
  for (size_t t = 0; t < spec.horizon; ++t) {
    const uint64_t c = rng() % choices;
    if (c == 0) {
      x.push_noop();
    } else {
      const size_t u = size_t((c - 1) / 2);
      x.push((c - 1) % 2 == 0 ? EntryKind::Insert : EntryKind::Delete, element_token(u));
    }
  }
  return x;
}

Stream generate_likes(const GeneratorSpec& spec) {
  std::mt19937_64 rng(mix64(spec.seed ^ 0x11));
  Stream x;
  std::vector<uint8_t> present(spec.universe, 0);
  std::vector<size_t> in, out;
  for (size_t t = 0; t < spec.horizon; ++t) {
    in.clear();
    out.clear();
    for (size_t u = 0; u < spec.universe; ++u) (present[u] ? in : out).push_back(u);
    const uint64_t action = rng() % 3;
    if (action == 0 && !out.empty()) {
      const size_t u = out[rng() % out.size()];
      x.push_insert(element_token(u));
      present[u] = 1;
    } else if (action == 1 && !in.empty()) {
      const size_t u = in[rng() % in.size()];
      x.push_delete(element_token(u));
      present[u] = 0;
    } else {
      x.push_noop();
    }
  }
  return x;
}

// Back-to-back alternating insert/delete runs, one element per run, run
// length target+1 (so a full run toggles presence exactly `target` times).
// Once every universe element has had its run the remainder is no-ops, which
// keeps the maximum flip count at the target.
Stream generate_adversarial(const GeneratorSpec& spec) {
  if (spec.target_flips == 0) {
    throw std::invalid_argument("adversarial-flip: target flip count must be >= 1");
  }
  if (spec.target_flips > spec.horizon || spec.horizon < 2) {
    throw std::invalid_argument("adversarial-flip: target flip count needs horizon >= target");
  }
  Stream x;
  size_t t = 0;
  size_t element = 0;
  while (t < spec.horizon && element < spec.universe) {
    // A run starting at t=1 needs target+1 entries to toggle `target` times;
    // later runs start from an absent element, whose first insertion already
    // counts as a toggle.
    const size_t full = size_t(spec.target_flips) + (t == 0 ? 1 : 0);
    const size_t run = std::min(full, spec.horizon - t);
    const std::string token = element_token(element);
    for (size_t i = 0; i < run; ++i) {
      x.push(i % 2 == 0 ? EntryKind::Insert : EntryKind::Delete, token);
    }
    t += run;
    ++element;
  }
  while (t < spec.horizon) {
    x.push_noop();
    ++t;
  }
  return x;
}

Stream generate_phase_batch(const GeneratorSpec& spec) {
  std::mt19937_64 rng(mix64(spec.seed ^ 0x22));
  Stream x;
  std::vector<size_t> subset;
  size_t t = 0;
  while (t < spec.horizon) {
    subset.clear();
    for (size_t u = 0; u < spec.universe; ++u) {
      if (rng() & 1) subset.push_back(u);
    }
    if (subset.empty()) {
      x.push_noop();
      ++t;
      continue;
    }
    for (size_t u : subset) {
      if (t == spec.horizon) return x;
      x.push_insert(element_token(u));
      ++t;
    }
    for (size_t u : subset) {
      if (t == spec.horizon) return x;
      x.push_delete(element_token(u));
      ++t;
    }
  }
  return x;
}

}  // namespace

GenModel parse_gen_model(std::string_view name) {
  if (name == "uniform-turnstile") return GenModel::UniformTurnstile;
  if (name == "likes-random") return GenModel::LikesRandom;
  if (name == "adversarial-flip") return GenModel::AdversarialFlip;
  if (name == "phase-batch") return GenModel::PhaseBatch;
  throw std::invalid_argument("unknown generator model: " + std::string(name));
}

std::string_view gen_model_name(GenModel model) {
  switch (model) {
    case GenModel::UniformTurnstile: return "uniform-turnstile";
    case GenModel::LikesRandom: return "likes-random";
    case GenModel::AdversarialFlip: return "adversarial-flip";
    case GenModel::PhaseBatch: return "phase-batch";
  }
  return "?";
}

Stream generate(const GeneratorSpec& spec) {
  if (spec.horizon == 0) throw std::invalid_argument("generate: horizon must be >= 1");
  if (spec.universe == 0) throw std::invalid_argument("generate: universe must be >= 1");
  switch (spec.model) {
    case GenModel::UniformTurnstile: return generate_uniform(spec);
    case GenModel::LikesRandom: return generate_likes(spec);
    case GenModel::AdversarialFlip: return generate_adversarial(spec);
    case GenModel::PhaseBatch: return generate_phase_batch(spec);
  }
  throw std::invalid_argument("generate: bad model");
}

EstimateTrace measure_error(const Stream& x, std::span<const double> estimates) {
  if (estimates.size() != x.size()) {
    throw std::invalid_argument("measure_error: estimate length does not match stream");
  }
  EstimateTrace out;
  out.truth = count_distinct_exact(x);
  out.estimate.assign(estimates.begin(), estimates.end());
  out.abs_error.resize(x.size());
  for (size_t t = 0; t < x.size(); ++t) {
    out.abs_error[t] = std::abs(double(out.truth[t]) - estimates[t]);
    out.linf = std::max(out.linf, out.abs_error[t]);
  }
  return out;
}

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile: empty sample");
  if (!(p >= 0) || !(p <= 1)) throw std::invalid_argument("quantile: p must be in [0, 1]");
  const double rank = p * double(sorted.size() - 1);
  const size_t lo = size_t(rank);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = rank - double(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

MechanismKind parse_mechanism_kind(std::string_view name) {
  if (name == "bounded") return MechanismKind::Bounded;
  if (name == "adaptive") return MechanismKind::Adaptive;
  if (name == "hybrid") return MechanismKind::Hybrid;
  if (name == "recompute") return MechanismKind::Recompute;
  if (name == "exact") return MechanismKind::Exact;
  throw std::invalid_argument("unknown mechanism: " + std::string(name));
}

std::string_view mechanism_kind_name(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::Bounded: return "bounded";
    case MechanismKind::Adaptive: return "adaptive";
    case MechanismKind::Hybrid: return "hybrid";
    case MechanismKind::Recompute: return "recompute";
    case MechanismKind::Exact: return "exact";
  }
  return "?";
}

std::unique_ptr<Mechanism> make_mechanism(const MechanismSpec& spec, size_t horizon,
                                          NoiseSource src) {
  switch (spec.kind) {
    case MechanismKind::Bounded:
      return std::make_unique<BoundedMechanism>(horizon, spec.rho, spec.flip_bound, src);
    case MechanismKind::Adaptive:
      return std::make_unique<AdaptiveMechanism>(horizon, spec.rho, src);
    case MechanismKind::Hybrid:
      return std::make_unique<HybridMechanism>(horizon, spec.rho, src);
    case MechanismKind::Recompute:
      return std::make_unique<RecomputeMechanism>(horizon, spec.rho, src, spec.block_length);
    case MechanismKind::Exact:
      return std::make_unique<ExactOracleMechanism>(horizon);
  }
  throw std::invalid_argument("make_mechanism: bad kind");
}

std::vector<BenchRow> bench_sweep(const BenchConfig& config) {
  if (config.flip_grid.empty()) throw std::invalid_argument("bench: empty flip grid");
  if (config.trials == 0) throw std::invalid_argument("bench: need at least one trial");

  size_t threads = config.threads;
  if (threads == 0) threads = std::max<size_t>(1, std::thread::hardware_concurrency());
  threads = std::min(threads, config.trials);

  std::vector<BenchRow> rows;
  rows.reserve(config.flip_grid.size());
  for (uint64_t w : config.flip_grid) {
    GeneratorSpec gen;
    gen.model = GenModel::AdversarialFlip;
    gen.horizon = config.horizon;
    gen.universe = config.horizon;  // enough elements for back-to-back runs
    gen.target_flips = w;
    gen.seed = mix64(config.seed ^ w);
    const Stream x = generate(gen);
    const std::vector<int64_t> truth = count_distinct_exact(x);

    MechanismSpec mech = config.mechanism;
    if (mech.kind == MechanismKind::Bounded && !config.fixed_flip_bound) mech.flip_bound = w;

    std::vector<double> linf(config.trials, 0.0);
    std::atomic<size_t> next{0};
    auto worker = [&]() {
      for (size_t trial = next.fetch_add(1); trial < config.trials; trial = next.fetch_add(1)) {
        const NoiseSource src =
            config.zeroed ? NoiseSource::zeroed() : NoiseSource::seeded(config.seed + trial);
        auto m = make_mechanism(mech, x.size(), src);
        double worst = 0.0;
        for (size_t t = 0; t < x.size(); ++t) {
          const double est = m->step(x[t]);
          worst = std::max(worst, std::abs(est - double(truth[t])));
        }
        linf[trial] = worst;
      }
    };
    std::vector<std::thread> pool;
    for (size_t i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::sort(linf.begin(), linf.end());
    BenchRow row;
    row.flip_target = w;
    row.trials = config.trials;
    row.rho = config.mechanism.rho;
    row.horizon = config.horizon;
    row.median_linf = quantile_sorted(linf, 0.5);
    row.p95_linf = quantile_sorted(linf, 0.95);
    row.seed = config.seed;
    rows.push_back(row);
  }
  return rows;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void write_bench_csv(std::ostream& out, std::span<const BenchRow> rows) {
  out << "w,trials,rho,T,median_linf,p95_linf,seed\n";
  for (const auto& r : rows) {
    out << r.flip_target << ',' << r.trials << ',' << format_number(r.rho) << ',' << r.horizon
        << ',' << format_number(r.median_linf) << ',' << format_number(r.p95_linf) << ','
        << r.seed << '\n';
  }
}

}  // namespace dpcd

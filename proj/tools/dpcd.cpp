// dpcd: differentially private distinct-count release for turnstile streams.
//
// Subcommands:
//   gen        synthetic stream generation
//   run        one mechanism over one stream, CSV trace out
//   bench      error sweep over a flip-count grid, CSV out
//   attack     batch inner-product / column-mean recovery through a mechanism
//   convert    privacy budget conversions
//   svt-trace  replay a threshold-query value file
//
// Exit codes: 0 success, 1 usage error, 2 data/validation error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "dpcd/accounting.hpp"
#include "dpcd/adaptive.hpp"
#include "dpcd/exact.hpp"
#include "dpcd/harness.hpp"
#include "dpcd/reductions.hpp"
#include "dpcd/stream.hpp"
#include "dpcd/svt.hpp"

namespace {

using namespace dpcd;

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

std::ostream& output_or_stdout(std::optional<std::ofstream>& holder, const std::string& path) {
  if (path.empty() || path == "-") return std::cout;
  holder.emplace(open_output(path));
  return *holder;
}

struct GenArgs {
  std::string model = "uniform-turnstile";
  size_t horizon = 0;
  size_t universe = 16;
  uint64_t flips = 1;
  uint64_t seed = 0;
  std::string out;
  std::string validate;
};

int run_gen(const GenArgs& args) {
  GeneratorSpec spec;
  spec.model = parse_gen_model(args.model);
  spec.horizon = args.horizon;
  spec.universe = args.universe;
  spec.target_flips = args.flips;
  spec.seed = args.seed;
  const Stream x = generate(spec);
  if (!args.validate.empty()) {
    if (const auto violation = validate_model(x, parse_stream_model(args.validate))) {
      std::cerr << "model violation at t=" << violation->time << " element=" << violation->element
                << ": " << violation->rule << "\n";
      return 2;
    }
  }
  std::optional<std::ofstream> holder;
  output_or_stdout(holder, args.out) << serialize_stream(x);
  return 0;
}

struct RunArgs {
  std::string mechanism = "bounded";
  std::string stream_path;
  double rho = 1.0;
  uint64_t flip_bound = 1;
  size_t block = 0;
  uint64_t seed = 0;
  bool zeroed = false;
  bool clamp = false;
  bool trace = false;
  std::string out;
};

int run_run(const RunArgs& args) {
  const Stream x = load_stream_file(args.stream_path);
  MechanismSpec spec;
  spec.kind = parse_mechanism_kind(args.mechanism);
  spec.rho = args.rho;
  spec.flip_bound = args.flip_bound;
  spec.block_length = args.block;
  const NoiseSource src = args.zeroed ? NoiseSource::zeroed() : NoiseSource::seeded(args.seed);
  auto mech = make_mechanism(spec, x.size(), src);

  std::vector<SvtTraceRecord> svt_trace;
  auto* adaptive = dynamic_cast<AdaptiveMechanism*>(mech.get());
  auto* hybrid = dynamic_cast<HybridMechanism*>(mech.get());
  if (args.trace) {
    if (adaptive) adaptive->set_trace_sink(&svt_trace);
    if (hybrid) hybrid->set_trace_sink(&svt_trace);
  }
  const bool with_bound_column = adaptive != nullptr || hybrid != nullptr;

  std::optional<std::ofstream> holder;
  std::ostream& out = output_or_stdout(holder, args.out);
  out << (with_bound_column ? "t,true,estimate,abs_error,w_max\n" : "t,true,estimate,abs_error\n");

  PrefixTracker exact;
  size_t trace_cursor = 0;
  for (size_t t = 1; t <= x.size(); ++t) {
    double est = mech->step(x[t - 1]);
    exact.apply(x[t - 1]);
    if (args.clamp) {
      est = std::max(0.0, std::min(est, double(exact.seen_elements())));
    }
    out << t << ',' << exact.distinct_count() << ',' << format_number(est) << ','
        << format_number(std::abs(est - double(exact.distinct_count())));
    if (with_bound_column) {
      out << ',' << (adaptive ? adaptive->flip_bound_estimate() : hybrid->flip_bound_estimate());
    }
    out << '\n';
    for (; trace_cursor < svt_trace.size(); ++trace_cursor) {
      const auto& r = svt_trace[trace_cursor];
      std::cerr << "svt t=" << r.time << " q=" << format_number(r.query) << " answer="
                << (r.answer == SvtAnswer::Above ? "Above" : "Below") << " w_max="
                << r.bound_after << "\n";
    }
  }
  return 0;
}

struct BenchArgs {
  std::string mechanism = "adaptive";
  std::vector<uint64_t> grid;
  size_t trials = 50;
  double rho = 1.0;
  size_t horizon = 4096;
  uint64_t seed = 0;
  size_t threads = 0;
  uint64_t flip_bound = 0;
  bool zeroed = false;
  std::string out;
};

int run_bench(const BenchArgs& args) {
  BenchConfig config;
  config.mechanism.kind = parse_mechanism_kind(args.mechanism);
  config.mechanism.rho = args.rho;
  if (args.flip_bound > 0) {
    config.mechanism.flip_bound = args.flip_bound;
    config.fixed_flip_bound = true;
  }
  config.flip_grid = args.grid;
  config.trials = args.trials;
  config.horizon = args.horizon;
  config.seed = args.seed;
  config.threads = args.threads;
  config.zeroed = args.zeroed;
  const auto rows = bench_sweep(config);
  std::optional<std::ofstream> holder;
  write_bench_csv(output_or_stdout(holder, args.out), rows);
  return 0;
}

struct AttackArgs {
  size_t n = 16;
  size_t queries = 4;  // k for inner-product, d for marginals
  double rho = 1.0;
  std::string mechanism = "bounded";
  uint64_t flip_bound = 0;
  size_t trials = 10;
  uint64_t seed = 0;
  std::string out;
};

int run_attack(bool marginals, const AttackArgs& args) {
  std::optional<std::ofstream> holder;
  std::ostream& out = output_or_stdout(holder, args.out);
  out << "trial,j,truth,estimate,abs_error\n";

  MechanismSpec spec;
  spec.kind = parse_mechanism_kind(args.mechanism);
  spec.rho = args.rho;
  spec.flip_bound = args.flip_bound > 0 ? args.flip_bound : 2 * args.queries;

  for (size_t trial = 0; trial < args.trials; ++trial) {
    std::mt19937_64 rng(mix64(args.seed + trial));
    const NoiseSource src = NoiseSource::seeded(args.seed + trial);
    if (marginals) {
      BinaryDataset y(args.n, args.queries);
      for (auto& b : y.bits) b = rng() & 1;
      auto mech = make_mechanism(spec, 2 * args.n * args.queries, src);
      const auto estimates = marginals_via_mechanism(y, *mech);
      for (size_t j = 0; j < args.queries; ++j) {
        const double truth = column_mean(y, j);
        out << trial << ',' << (j + 1) << ',' << format_number(truth) << ','
            << format_number(estimates[j]) << ',' << format_number(std::abs(estimates[j] - truth))
            << '\n';
      }
    } else {
      BinaryDataset y(args.n, 1);
      for (auto& b : y.bits) b = rng() & 1;
      QuerySet q(args.queries, args.n);
      for (auto& b : q.bits) b = rng() & 1;
      auto mech = make_mechanism(spec, (2 * args.queries + 1) * args.n, src);
      const auto estimates = inner_products_via_mechanism(y, q, *mech);
      for (size_t j = 0; j < args.queries; ++j) {
        const double truth = double(inner_product(y, q, j));
        out << trial << ',' << (j + 1) << ',' << format_number(truth) << ','
            << format_number(estimates[j]) << ',' << format_number(std::abs(estimates[j] - truth))
            << '\n';
      }
    }
  }
  return 0;
}

struct ConvertArgs {
  double rho = -1;
  double eps = -1;
  double delta = -1;
};

int run_convert(const ConvertArgs& args) {
  if (args.delta < 0) throw CLI::ValidationError("convert", "--delta is required");
  const bool have_rho = args.rho >= 0;
  const bool have_eps = args.eps >= 0;
  if (have_rho == have_eps) {
    throw CLI::ValidationError("convert", "exactly one of --rho or --eps is required");
  }
  if (have_rho) {
    const PrivacyBudget b = zcdp_to_dp(args.rho, args.delta);
    std::cout << "eps=" << format_number(b.epsilon) << "\n";
    std::cout << "delta=" << format_number(b.delta) << "\n";
  } else {
    std::cout << "rho=" << format_number(dp_to_zcdp_budget(args.eps, args.delta)) << "\n";
  }
  return 0;
}

struct SvtTraceArgs {
  std::string values_path;
  uint64_t cutoff = 1;
  double rho = 0.5;
  uint64_t seed = 0;
  bool zeroed = false;
};

int run_svt_trace(const SvtTraceArgs& args) {
  std::ifstream in(args.values_path);
  if (!in) throw std::runtime_error("cannot open value file: " + args.values_path);
  SparseVector svt(args.rho, args.cutoff,
                   args.zeroed ? NoiseSource::zeroed() : NoiseSource::seeded(args.seed));
  std::cout << "t,value,answer\n";
  std::string line;
  size_t t = 0;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    double value = 0;
    try {
      value = std::stod(line);
    } catch (const std::exception&) {
      throw std::runtime_error("bad value at line " + std::to_string(line_no) + ": " + line);
    }
    ++t;
    std::cout << t << ',' << format_number(value) << ','
              << (svt.query(value) == SvtAnswer::Above ? "Above" : "Below") << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"differentially private distinct counting over turnstile streams"};
  app.require_subcommand(1);

  std::string format = "csv";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv"}))
      ->capture_default_str();

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a synthetic stream");
  gen_cmd->add_option("--model", gen.model,
                      "uniform-turnstile | likes-random | adversarial-flip | phase-batch");
  gen_cmd->add_option("--T", gen.horizon, "stream length")->required();
  gen_cmd->add_option("--universe", gen.universe, "universe size");
  gen_cmd->add_option("--w", gen.flips, "target flip count (adversarial-flip)");
  gen_cmd->add_option("--seed", gen.seed, "generator seed");
  gen_cmd->add_option("--out", gen.out, "output file (default stdout)");
  gen_cmd->add_option("--validate", gen.validate, "check the stream against a model before writing");

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "run a mechanism over a stream file");
  run_cmd->add_option("--mechanism", run.mechanism, "bounded | adaptive | hybrid | recompute | exact");
  run_cmd->add_option("--stream", run.stream_path, "input stream file")->required();
  run_cmd->add_option("--rho", run.rho, "zCDP budget");
  run_cmd->add_option("--w", run.flip_bound, "flip bound (bounded mechanism)");
  run_cmd->add_option("--block", run.block, "block length (recompute mechanism, 0 = auto)");
  run_cmd->add_option("--seed", run.seed, "noise seed");
  run_cmd->add_flag("--zeroed", run.zeroed, "use the zeroed noise source");
  run_cmd->add_flag("--clamp", run.clamp, "clamp estimates to [0, elements seen]");
  run_cmd->add_flag("--trace", run.trace, "dump threshold queries and answers to stderr");
  run_cmd->add_option("--out", run.out, "output CSV (default stdout)");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "error sweep over a flip-count grid");
  bench_cmd->add_option("--mechanism", bench.mechanism, "mechanism under test");
  bench_cmd->add_option("--w-grid", bench.grid, "flip-count grid")->required()->delimiter(',');
  bench_cmd->add_option("--trials", bench.trials, "trials per grid point");
  bench_cmd->add_option("--rho", bench.rho, "zCDP budget");
  bench_cmd->add_option("--T", bench.horizon, "stream length");
  bench_cmd->add_option("--seed", bench.seed, "base seed");
  bench_cmd->add_option("--threads", bench.threads, "worker threads (0 = auto)");
  bench_cmd->add_option("--w", bench.flip_bound, "fixed flip bound override (bounded mechanism)");
  bench_cmd->add_flag("--zeroed", bench.zeroed, "use the zeroed noise source in every trial");
  bench_cmd->add_option("--out", bench.out, "output CSV (default stdout)");

  AttackArgs attack;
  auto* attack_cmd = app.add_subcommand("attack", "recover batch statistics through a mechanism");
  attack_cmd->require_subcommand(1);
  auto* ip_cmd = attack_cmd->add_subcommand("inner-product", "inner products against a bit vector");
  auto* mg_cmd = attack_cmd->add_subcommand("marginals", "column means of a bit matrix");
  for (auto* cmd : {ip_cmd, mg_cmd}) {
    cmd->add_option("--n", attack.n, "rows");
    cmd->add_option("--rho", attack.rho, "zCDP budget");
    cmd->add_option("--mechanism", attack.mechanism, "mechanism under attack");
    cmd->add_option("--w", attack.flip_bound, "flip bound override (bounded mechanism)");
    cmd->add_option("--trials", attack.trials, "number of trials");
    cmd->add_option("--seed", attack.seed, "base seed");
    cmd->add_option("--out", attack.out, "output CSV (default stdout)");
  }
  ip_cmd->add_option("--k", attack.queries, "number of queries");
  mg_cmd->add_option("--d", attack.queries, "number of columns");

  ConvertArgs convert;
  auto* convert_cmd = app.add_subcommand("convert", "privacy budget conversions");
  convert_cmd->add_option("--rho", convert.rho, "zCDP budget to convert to (eps, delta)");
  convert_cmd->add_option("--eps", convert.eps, "DP epsilon to convert to rho");
  convert_cmd->add_option("--delta", convert.delta, "DP delta");

  SvtTraceArgs svt;
  auto* svt_cmd = app.add_subcommand("svt-trace", "replay a threshold-query value file");
  svt_cmd->add_option("--values", svt.values_path, "file with one query value per line")->required();
  svt_cmd->add_option("--c", svt.cutoff, "cutoff on Above answers");
  svt_cmd->add_option("--rho", svt.rho, "zCDP budget");
  svt_cmd->add_option("--seed", svt.seed, "noise seed");
  svt_cmd->add_flag("--zeroed", svt.zeroed, "use the zeroed noise source");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (gen_cmd->parsed()) return run_gen(gen);
    if (run_cmd->parsed()) return run_run(run);
    if (bench_cmd->parsed()) return run_bench(bench);
    if (attack_cmd->parsed()) return run_attack(mg_cmd->parsed(), attack);
    if (convert_cmd->parsed()) return run_convert(convert);
    if (svt_cmd->parsed()) return run_svt_trace(svt);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <omp.h>

#include "CLI11.hpp"
#include "bench_runner.hpp"
#include "loo/harness.hpp"
#include "loo/io.hpp"
#include "loo/report.hpp"

namespace loo::cli {

namespace {

namespace fs = std::filesystem;
using report::json;

/// A violated internal postcondition; maps to exit code 4.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void apply_threads(int threads) {
  if (threads < 0) throw ArgumentError("--threads must be positive");
  if (threads > 0) omp_set_num_threads(threads);
}

std::vector<Bandwidth> parse_grid(const std::vector<std::size_t>& values, std::size_t n) {
  std::vector<Bandwidth> grid;
  for (std::size_t v : values) {
    if (v == 0) throw ArgumentError("grid values must be positive");
    grid.emplace_back(v);
  }
  return normalize_grid(std::move(grid), n);
}

void write_json(const fs::path& path, const json& doc) {
  io::write_atomic(path, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
}

struct SimulateOptions {
  std::string config_path;
  std::string graphon;
  std::size_t n = 0;
  std::string h;
  bool undersmooth = false;
  double alpha = 0.0;
  double c_bias = 0.0;
  std::uint64_t seed = 0;
  std::size_t replicates = 0;
  std::size_t metrics_row = 0;
  std::size_t cv_rows = 0;
  int threads = 0;
  std::string out;
  std::string edges;
  std::string dump_adjacency;
};

struct EstimateOptions {
  std::string input;
  bool symmetrize = false;
  std::string h = "auto";
  double alpha = kDefaultAlpha;
  double c_bias = kDefaultBiasConstant;
  std::size_t cv_rows = 10;
  int threads = 0;
  std::string out;
  std::string intervals;
  std::string tune_out;
};

struct TuneOptions {
  std::string input;
  bool symmetrize = false;
  std::size_t row = 0;
  std::vector<std::size_t> grid;
  int threads = 0;
  std::string out;
};

struct BenchOptions {
  std::vector<std::size_t> sizes{100, 200, 500};
  std::uint64_t seed = kDefaultSeed;
  std::size_t naive_samples = 3;
  int threads = 0;
  std::string out;
};

SimConfig resolve_config(CLI::App& cmd, const SimulateOptions& o) {
  SimConfig cfg;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw InputError("cannot open config '" + o.config_path + "'");
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw InputError(std::string("config is not valid JSON: ") + e.what());
    }
    cfg = report::config_from_json(doc, cfg);
  }
  auto given = [&](const char* name) { return cmd.count(name) > 0; };
  if (given("--graphon")) cfg.graphon = GraphonModel::parse(o.graphon);
  if (given("--n")) cfg.n = o.n;
  if (given("--h")) cfg.h = BandwidthRule::parse(o.h);
  if (o.undersmooth) {
    if (given("--h")) throw ArgumentError("--undersmooth conflicts with --h");
    cfg.h = {BandwidthRule::Kind::Undersmooth, 0};
  }
  if (given("--alpha")) cfg.alpha = o.alpha;
  if (given("--c-bias")) cfg.c_bias = o.c_bias;
  if (given("--seed")) cfg.seed = o.seed;
  if (given("--replicates")) cfg.replicates = o.replicates;
  if (given("--metrics-row")) cfg.metrics_row = o.metrics_row;
  if (given("--cv-rows")) cfg.cv_rows = o.cv_rows;
  cfg.validate();
  return cfg;
}

int cmd_simulate(CLI::App& cmd, const SimulateOptions& o, std::ostream& out) {
  apply_threads(o.threads);
  const SimConfig cfg = resolve_config(cmd, o);

  if (cfg.replicates > 1) {
    if (!o.edges.empty() || !o.dump_adjacency.empty()) {
      throw ArgumentError("--edges and --dump-adjacency need a single replicate");
    }
    const ReplicatedReport rep = run_replicated(cfg);
    report::print_config(out, cfg, rep.replicates.front().h);
    report::print_table(out, rep);
    if (!o.out.empty()) write_json(o.out, report::to_json(rep));
    return kSuccess;
  }

  const SimulationRun run = simulate(cfg);
  const SimReport& r = run.report;
  if (!(r.coverage_eb >= 0.0 && r.coverage_eb <= 1.0 && r.coverage_normal >= 0.0 &&
        r.coverage_normal <= 1.0 && r.width_eb >= 0.0 && r.width_eb <= 2.0 &&
        r.width_normal >= 0.0 && r.width_normal <= 2.0)) {
    throw InvariantViolation("simulation report out of range");
  }
  report::print_config(out, cfg, r.h);
  report::print_table(out, r);
  if (!o.out.empty()) write_json(o.out, report::to_json(r));
  if (!o.edges.empty()) {
    const auto rows = run.edge_records();
    io::write_atomic(o.edges, [&](std::ostream& os) { io::write_edge_csv(os, rows); });
  }
  if (!o.dump_adjacency.empty()) {
    io::write_atomic(o.dump_adjacency,
                     [&](std::ostream& os) { io::write_edge_list(os, run.adjacency); });
  }
  return kSuccess;
}

int cmd_estimate(const EstimateOptions& o, std::ostream& out, std::ostream& err) {
  apply_threads(o.threads);
  const BandwidthRule rule = BandwidthRule::parse(o.h);
  if (!(o.alpha > 0.0 && o.alpha < 1.0)) throw ArgumentError("alpha must lie in (0, 1)");
  if (!(o.c_bias >= 0.0)) throw ArgumentError("c_bias must be >= 0");
  if (o.cv_rows == 0) throw ArgumentError("--cv-rows must be positive");

  const Adjacency A = io::read_adjacency(o.input, o.symmetrize);
  if (A.size() < 8) throw InputError("network needs at least 8 nodes");

  std::optional<GlobalCvResult> tuning;
  const Bandwidth h = resolve_bandwidth(rule, A, o.cv_rows, &tuning);
  const LooFit fit = fit_loo(A, h);
  const IntervalSet intervals = build_intervals(fit, o.alpha, o.c_bias);

  err << "n=" << A.size() << " h=" << h.value() << " (" << rule.to_string() << ")\n";
  if (o.out.empty()) {
    io::write_estimate_csv(out, fit, intervals);
  } else {
    io::write_atomic(o.out, [&](std::ostream& os) { io::write_estimate_csv(os, fit, intervals); });
  }
  if (!o.intervals.empty()) {
    std::vector<IntervalReport> all;
    all.reserve(2 * intervals.eb.size());
    for (std::size_t s = 0; s < intervals.eb.size(); ++s) {
      all.push_back(intervals.eb[s]);
      all.push_back(intervals.normal[s]);
    }
    io::write_atomic(o.intervals, [&](std::ostream& os) { io::write_interval_csv(os, all); });
  }
  if (tuning) {
    json doc = report::to_json(*tuning);
    std::string sidecar = o.tune_out;
    if (sidecar.empty() && !o.out.empty()) sidecar = o.out + ".tune.json";
    if (sidecar.empty()) {
      err << doc.dump(2) << '\n';
    } else {
      write_json(sidecar, doc);
    }
  }
  return kSuccess;
}

int cmd_tune(const TuneOptions& o, std::ostream& out) {
  apply_threads(o.threads);
  const Adjacency A = io::read_adjacency(o.input, o.symmetrize);
  if (A.size() < 8) throw InputError("network needs at least 8 nodes");
  if (o.row >= A.size()) throw ArgumentError("--row out of range");
  const std::vector<Bandwidth> grid =
      o.grid.empty() ? default_grid(A.size()) : parse_grid(o.grid, A.size());
  const CvResult result = cv_select(A, o.row, grid);
  report::print_table(out, result);
  if (!o.out.empty()) write_json(o.out, report::to_json(result));
  return kSuccess;
}

int cmd_bench(const BenchOptions& o, std::ostream& out) {
  apply_threads(o.threads);
  json doc;
  doc["threads"] = omp_get_max_threads();
  doc["sizes"] = json::array();
  bool ok = true;
  out << "       n     h   twohop_s   corr/j_s  naive/j_s   speedup   pass/j_s  pipeline_s"
         "  budget_s\n";
  for (std::size_t n : o.sizes) {
    if (n < 8) throw ArgumentError("bench sizes must be at least 8");
    const bench::SizeTiming t = bench::time_size(n, o.seed, o.naive_samples);
    std::ostringstream line;
    line.setf(std::ios::scientific);
    line.precision(2);
    line << std::setw(8) << t.n << std::setw(6) << t.h << std::setw(11) << t.full_twohop_s
         << std::setw(11) << t.correction_per_j_s << std::setw(11) << t.naive_per_j_s;
    line.unsetf(std::ios::scientific);
    line.setf(std::ios::fixed);
    line.precision(1);
    line << std::setw(10) << t.correction_speedup;
    line.unsetf(std::ios::fixed);
    line.setf(std::ios::scientific);
    line.precision(2);
    line << std::setw(11) << t.loo_pass_per_j_s;
    line.unsetf(std::ios::scientific);
    line.setf(std::ios::fixed);
    line.precision(3);
    line << std::setw(12) << t.pipeline_s << std::setw(10) << t.budget_s;
    out << line.str() << (t.within_budget ? "" : "  OVER BUDGET")
        << (t.correction_path_ok ? "" : "  SLOW CORRECTION") << '\n';
    ok = ok && t.correction_path_ok;
    doc["sizes"].push_back(bench::to_json(t));
  }
  doc["correction_path_ok"] = ok;
  if (o.out.empty()) {
    out << doc.dump(2) << '\n';
  } else {
    write_json(o.out, doc);
  }
  if (!ok) throw InvariantViolation("per-j rank correction is not faster than re-squaring");
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Leave-one-out neighborhood smoothing for network edge probabilities",
               "loosmooth"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run the simulation harness");
  simulate_cmd->add_option("--config", sim.config_path, "JSON config file (flags override it)");
  simulate_cmd->add_option("--graphon", sim.graphon,
                           "smooth|block|wiggly|rank1|spiky|constant:<c>");
  simulate_cmd->add_option("--n", sim.n, "Number of nodes");
  simulate_cmd->add_option("--h", sim.h, "Bandwidth: integer, auto, cv or undersmooth");
  simulate_cmd->add_flag("--undersmooth", sim.undersmooth, "Use h = floor(sqrt(n)/ln n)");
  simulate_cmd->add_option("--alpha", sim.alpha, "Significance level");
  simulate_cmd->add_option("--c-bias", sim.c_bias, "Bias cushion constant");
  simulate_cmd->add_option("--seed", sim.seed, "Master seed (default 12345)");
  simulate_cmd->add_option("--replicates", sim.replicates, "Independent replicates");
  simulate_cmd->add_option("--metrics-row", sim.metrics_row, "Row used for the MSE");
  simulate_cmd->add_option("--cv-rows", sim.cv_rows, "Rows tuned when --h cv");
  simulate_cmd->add_option("--threads", sim.threads, "Worker threads");
  simulate_cmd->add_option("--out", sim.out, "Write the report as JSON");
  simulate_cmd->add_option("--edges", sim.edges, "Write per-edge CSV");
  simulate_cmd->add_option("--dump-adjacency", sim.dump_adjacency,
                           "Write the sampled graph as an edge list");

  EstimateOptions est;
  auto* estimate_cmd = app.add_subcommand("estimate", "Estimate P and intervals from data");
  estimate_cmd->add_option("--input", est.input, "Adjacency file")->required();
  estimate_cmd->add_flag("--symmetrize", est.symmetrize, "Use A OR A^T and clear the diagonal");
  estimate_cmd->add_option("--h", est.h, "Bandwidth: integer, auto or cv");
  estimate_cmd->add_option("--alpha", est.alpha, "Significance level");
  estimate_cmd->add_option("--c-bias", est.c_bias, "Bias cushion constant");
  estimate_cmd->add_option("--cv-rows", est.cv_rows, "Rows tuned when --h cv");
  estimate_cmd->add_option("--threads", est.threads, "Worker threads");
  estimate_cmd->add_option("--out", est.out, "Per-edge CSV (default stdout)");
  estimate_cmd->add_option("--intervals", est.intervals, "Interval-report CSV");
  estimate_cmd->add_option("--tune-out", est.tune_out, "Tuning sidecar JSON for --h cv");

  TuneOptions tune;
  auto* tune_cmd = app.add_subcommand("tune", "Cross-validate the bandwidth for one row");
  tune_cmd->add_option("--input", tune.input, "Adjacency file")->required();
  tune_cmd->add_flag("--symmetrize", tune.symmetrize, "Use A OR A^T and clear the diagonal");
  tune_cmd->add_option("--row", tune.row, "Row to tune (default 0)");
  tune_cmd->add_option("--grid", tune.grid, "Comma-separated candidate h values")->delimiter(',');
  tune_cmd->add_option("--threads", tune.threads, "Worker threads");
  tune_cmd->add_option("--out", tune.out, "Write the result as JSON");

  BenchOptions bench_opts;
  auto* bench_cmd = app.add_subcommand("bench", "Time the kernels against the naive path");
  bench_cmd->add_option("--sizes", bench_opts.sizes, "Comma-separated n values")->delimiter(',');
  bench_cmd->add_option("--seed", bench_opts.seed, "Seed for the test graphs");
  bench_cmd->add_option("--naive-samples", bench_opts.naive_samples,
                        "Columns re-squared naively per size");
  bench_cmd->add_option("--threads", bench_opts.threads, "Worker threads");
  bench_cmd->add_option("--out", bench_opts.out, "Write timings JSON here instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (simulate_cmd->parsed()) return cmd_simulate(*simulate_cmd, sim, out);
    if (estimate_cmd->parsed()) return cmd_estimate(est, out, err);
    if (tune_cmd->parsed()) return cmd_tune(tune, out);
    if (bench_cmd->parsed()) return cmd_bench(bench_opts, out);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputData;
  } catch (const fs::filesystem_error& e) {
    err << "input error: " << e.what() << '\n';
    return kInputData;
  } catch (const ArgumentError& e) {
    err << "usage error: " << e.what() << '\n' << app.help() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace loo::cli

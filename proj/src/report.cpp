#include "loo/report.hpp"

#include <iomanip>
#include <ostream>
#include <set>
#include <string>

namespace loo::report {

json to_json(const SimConfig& cfg) {
  return json{{"graphon", cfg.graphon.name()},
              {"n", cfg.n},
              {"h", cfg.h.to_string()},
              {"alpha", cfg.alpha},
              {"c_bias", cfg.c_bias},
              {"seed", cfg.seed},
              {"replicates", cfg.replicates},
              {"metrics_row", cfg.metrics_row},
              {"cv_rows", cfg.cv_rows}};
}

SimConfig config_from_json(const json& doc, SimConfig base) {
  if (!doc.is_object()) throw ArgumentError("config must be a JSON object");
  static const std::set<std::string> known{"graphon", "n",     "h",          "alpha",
                                           "c_bias",  "seed",  "replicates", "metrics_row",
                                           "cv_rows"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.contains(key)) throw ArgumentError("unknown config key '" + key + "'");
  }
  try {
    if (doc.contains("graphon")) base.graphon = GraphonModel::parse(doc["graphon"].get<std::string>());
    if (doc.contains("n")) base.n = doc["n"].get<std::size_t>();
    if (doc.contains("h")) {
      const json& h = doc["h"];
      base.h = h.is_string() ? BandwidthRule::parse(h.get<std::string>())
                             : BandwidthRule::parse(std::to_string(h.get<std::size_t>()));
    }
    if (doc.contains("alpha")) base.alpha = doc["alpha"].get<double>();
    if (doc.contains("c_bias")) base.c_bias = doc["c_bias"].get<double>();
    if (doc.contains("seed")) base.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("replicates")) base.replicates = doc["replicates"].get<std::size_t>();
    if (doc.contains("metrics_row")) base.metrics_row = doc["metrics_row"].get<std::size_t>();
    if (doc.contains("cv_rows")) base.cv_rows = doc["cv_rows"].get<std::size_t>();
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("bad config value: ") + e.what());
  }
  return base;
}

json to_json(const SimReport& r) {
  return json{{"config", to_json(r.config)},
              {"h", r.h},
              {"mse_loo", r.mse_loo},
              {"mse_classical", r.mse_classical},
              {"coverage_eb", r.coverage_eb},
              {"width_eb", r.width_eb},
              {"coverage_normal", r.coverage_normal},
              {"width_normal", r.width_normal},
              {"coverage_eb_local", r.coverage_eb_local},
              {"bias_radius", r.bias_radius},
              {"coverage_eb_widened", r.coverage_eb_widened},
              {"runtime_seconds", r.runtime_seconds}};
}

namespace {

json summary(const MetricSummary& m) { return json{{"mean", m.mean}, {"std_error", m.std_error}}; }

}  // namespace

json to_json(const ReplicatedReport& r) {
  json reps = json::array();
  for (const SimReport& s : r.replicates) reps.push_back(to_json(s));
  return json{{"config", to_json(r.config)},
              {"seeds", r.seeds},
              {"mse_loo", summary(r.mse_loo)},
              {"mse_classical", summary(r.mse_classical)},
              {"coverage_eb", summary(r.coverage_eb)},
              {"width_eb", summary(r.width_eb)},
              {"coverage_normal", summary(r.coverage_normal)},
              {"width_normal", summary(r.width_normal)},
              {"coverage_eb_local", summary(r.coverage_eb_local)},
              {"coverage_eb_widened", summary(r.coverage_eb_widened)},
              {"runtime_seconds", r.runtime_seconds},
              {"replicates", reps}};
}

json to_json(const CvResult& result) {
  json grid = json::array();
  for (Bandwidth h : result.grid) grid.push_back(h.value());
  return json{{"row", result.row},
              {"grid", grid},
              {"scores", result.scores},
              {"selected", result.selected.value()}};
}

json to_json(const GlobalCvResult& result) {
  json rows = json::array();
  for (const CvResult& r : result.rows) rows.push_back(to_json(r));
  return json{{"selected", result.selected.value()}, {"rows", rows}};
}

void print_config(std::ostream& out, const SimConfig& cfg, std::size_t resolved_h) {
  out << "graphon=" << cfg.graphon.name() << " n=" << cfg.n << " h=" << resolved_h << " ("
      << cfg.h.to_string() << ") alpha=" << cfg.alpha << " c_bias=" << cfg.c_bias
      << " seed=" << cfg.seed << " replicates=" << cfg.replicates
      << " metrics_row=" << cfg.metrics_row << '\n';
}

void print_table(std::ostream& out, const SimReport& r) {
  const auto flags = out.flags();
  out << std::fixed;
  out << "metric               value\n";
  out << "mse_loo              " << std::setprecision(6) << r.mse_loo << '\n';
  out << "mse_classical        " << r.mse_classical << '\n';
  out << std::setprecision(4);
  out << "coverage_eb          " << r.coverage_eb << '\n';
  out << "width_eb             " << r.width_eb << '\n';
  out << "coverage_normal      " << r.coverage_normal << '\n';
  out << "width_normal         " << r.width_normal << '\n';
  out << "coverage_eb_local    " << r.coverage_eb_local << '\n';
  out << "bias_radius          " << r.bias_radius << '\n';
  out << "coverage_eb_widened  " << r.coverage_eb_widened << '\n';
  out << "runtime_seconds      " << std::setprecision(3) << r.runtime_seconds << '\n';
  out.flags(flags);
}

void print_table(std::ostream& out, const ReplicatedReport& r) {
  const auto flags = out.flags();
  out << std::fixed << std::setprecision(6);
  out << "metric               mean        std_error   (replicates=" << r.replicates.size()
      << ")\n";
  auto line = [&](const char* name, const MetricSummary& m) {
    out << std::left << std::setw(21) << name << std::right << std::setw(10) << m.mean << "  "
        << std::setw(10) << m.std_error << '\n';
  };
  line("mse_loo", r.mse_loo);
  line("mse_classical", r.mse_classical);
  line("coverage_eb", r.coverage_eb);
  line("width_eb", r.width_eb);
  line("coverage_normal", r.coverage_normal);
  line("width_normal", r.width_normal);
  line("coverage_eb_local", r.coverage_eb_local);
  line("coverage_eb_widened", r.coverage_eb_widened);
  out << "runtime_seconds      " << std::setprecision(3) << r.runtime_seconds << '\n';
  out.flags(flags);
}

void print_table(std::ostream& out, const CvResult& result) {
  const auto flags = out.flags();
  out << "row " << result.row << '\n';
  out << "       h        score\n";
  out << std::fixed << std::setprecision(6);
  for (std::size_t g = 0; g < result.grid.size(); ++g) {
    out << std::setw(8) << result.grid[g].value() << "  " << std::setw(11) << result.scores[g]
        << (result.grid[g] == result.selected ? "  *" : "") << '\n';
  }
  out << "selected h=" << result.selected.value() << '\n';
  out.flags(flags);
}

}  // namespace loo::report

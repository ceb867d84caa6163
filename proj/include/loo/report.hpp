#pragma once

#include <iosfwd>

#include "json.hpp"
#include "loo/harness.hpp"
#include "loo/tuning.hpp"

namespace loo::report {

using nlohmann::json;

json to_json(const SimConfig& cfg);

/// Overlays the keys present in `doc` onto `base`. Unknown keys and wrong
/// types throw ArgumentError.
SimConfig config_from_json(const json& doc, SimConfig base = {});

json to_json(const SimReport& report);
json to_json(const ReplicatedReport& report);
json to_json(const CvResult& result);
json to_json(const GlobalCvResult& result);

void print_config(std::ostream& out, const SimConfig& cfg, std::size_t resolved_h);
void print_table(std::ostream& out, const SimReport& report);
void print_table(std::ostream& out, const ReplicatedReport& report);
void print_table(std::ostream& out, const CvResult& result);

}  // namespace loo::report

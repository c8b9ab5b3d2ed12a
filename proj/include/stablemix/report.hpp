#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace stablemix {

struct RunRecord {
  std::string config_hash;
  std::string content_hash;
  std::map<std::string, double> timings;  // excluded from determinism
  std::vector<std::string> outputs;
  std::map<std::string, bool> checks;

  bool all_pass() const {
    for (const auto& [k, v] : checks)
      if (!v) return false;
    return true;
  }
};

// report.json = { config: {...lines...}, results, record }. The canonical
// config string is embedded verbatim so reports carry every resolved knob.
void write_report_json(const std::string& path,
                       const std::string& canonical_cfg,
                       const nlohmann::json& results, const RunRecord& rec);

// Small helper to emit a ready-to-run gnuplot script next to a CSV.
void write_gnuplot_script(const std::string& csv_path, int dim,
                          const std::string& title);

}  // namespace stablemix

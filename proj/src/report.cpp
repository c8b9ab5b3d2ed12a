#include "stablemix/report.hpp"

#include <fstream>

#include "stablemix/grid.hpp"

namespace stablemix {

void write_report_json(const std::string& path,
                       const std::string& canonical_cfg,
                       const nlohmann::json& results, const RunRecord& rec) {
  nlohmann::json j;
  j["config"] = canonical_cfg;
  j["results"] = results;
  j["record"]["config_hash"] = rec.config_hash;
  j["record"]["content_hash"] = rec.content_hash;
  j["record"]["outputs"] = rec.outputs;
  j["record"]["checks"] = rec.checks;
  j["record"]["timings_sec"] = rec.timings;
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open report file: " + path);
  out << j.dump(2) << "\n";
}

void write_gnuplot_script(const std::string& csv_path, int dim,
                          const std::string& title) {
  std::ofstream gp(csv_path + ".gp");
  if (!gp) throw ConfigError("cannot open gnuplot script: " + csv_path + ".gp");
  gp << "set datafile separator ','\n";
  gp << "set title '" << title << "'\n";
  if (dim == 1) {
    gp << "plot '" << csv_path << "' skip 1 using 1:2 with lines notitle\n";
  } else {
    gp << "set view map\n";
    gp << "splot '" << csv_path << "' skip 1 using 1:2:3 with points pt 5 ps 0.4 palette notitle\n";
  }
  gp << "pause -1\n";
}

}  // namespace stablemix

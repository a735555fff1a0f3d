#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "youngwalk/experiments.hpp"

namespace yw {

std::string tool_version();

struct RunMeta {
  std::string command;
  std::string config_hash;
  std::uint64_t seed = 0;
};

// "# key value" lines: tool, version, command, config_hash, seed.
void write_meta_comment(std::ostream& os, const RunMeta& meta);

// Long format: n,t,s,count,mean_jumps,quantity,k,mean,variance,stderr with
// quantity M (moments), R (cumulants) or defect.
void write_ensemble_csv(std::ostream& os, const EnsembleStats& stats);
// n,t,x,omega_mean for cells with a recorded profile.
void write_mean_profiles_csv(std::ostream& os, const EnsembleStats& stats);

// JSON object with sorted keys; `extra` is merged in at top level (a JSON
// object text, or empty).
std::string ensemble_summary_json(const EnsembleStats& stats, const RunMeta& meta, const std::string& extra = "");
std::string meta_json(const RunMeta& meta, const std::string& body);

struct PlotSeries {
  std::string csv_file;
  int x_column;  // 1-based
  int y_column;
  std::string title;
};

// gnuplot script drawing each series as a line, writing `output_png`.
void write_gnuplot_script(std::ostream& os, const std::string& title, const std::string& output_png,
                          const std::vector<PlotSeries>& series);

}  // namespace yw

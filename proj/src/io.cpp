#include "youngwalk/io.hpp"

#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "youngwalk/error.hpp"

namespace yw {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json meta_object(const RunMeta& meta) {
  return {{"tool", "youngwalk"},
          {"version", tool_version()},
          {"command", meta.command},
          {"config_hash", meta.config_hash},
          {"seed", meta.seed}};
}

}  // namespace

std::string tool_version() { return YOUNGWALK_VERSION; }

void write_meta_comment(std::ostream& os, const RunMeta& meta) {
  os << "# tool youngwalk\n# version " << tool_version() << "\n# command " << meta.command << "\n# config_hash "
     << meta.config_hash << "\n# seed " << meta.seed << "\n";
}

void write_ensemble_csv(std::ostream& os, const EnsembleStats& stats) {
  os << "n,t,s,count,mean_jumps,quantity,k,mean,variance,stderr\n";
  for (const auto& c : stats.cells) {
    const std::string head = std::to_string(c.n) + "," + g17(c.t) + "," + g17(c.s) + "," + std::to_string(c.count) +
                             "," + g17(c.mean_jumps) + ",";
    for (std::size_t k = 0; k < c.moments.size(); ++k)
      os << head << "M," << k << "," << g17(c.moments[k].mean) << "," << g17(c.moments[k].var) << ","
         << g17(c.moments[k].stderr_) << "\n";
    for (std::size_t j = 0; j < c.cumulants.size(); ++j)
      os << head << "R," << j + 1 << "," << g17(c.cumulants[j].mean) << "," << g17(c.cumulants[j].var) << ","
         << g17(c.cumulants[j].stderr_) << "\n";
    os << head << "defect,0," << g17(c.defect) << ",," << g17(c.defect_stderr) << "\n";
  }
}

void write_mean_profiles_csv(std::ostream& os, const EnsembleStats& stats) {
  os << "n,t,x,omega_mean\n";
  for (const auto& c : stats.cells)
    for (std::size_t i = 0; i < c.profile_x.size(); ++i)
      os << c.n << "," << g17(c.t) << "," << g17(c.profile_x[i]) << "," << g17(c.profile_mean[i]) << "\n";
}

std::string ensemble_summary_json(const EnsembleStats& stats, const RunMeta& meta, const std::string& extra) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : stats.cells) {
    nlohmann::json R = nlohmann::json::array(), se = nlohmann::json::array();
    for (const auto& mv : c.cumulants) {
      R.push_back(mv.mean);
      se.push_back(mv.stderr_);
    }
    cells.push_back({{"n", c.n},
                     {"t", c.t},
                     {"s", c.s},
                     {"count", c.count},
                     {"mean_jumps", c.mean_jumps},
                     {"cumulants_mean", R},
                     {"cumulants_stderr", se},
                     {"defect", c.defect},
                     {"defect_stderr", c.defect_stderr}});
  }
  nlohmann::json body = {{"cells", cells}};
  return meta_json(meta, body.dump() + (extra.empty() ? "" : "\n" + extra));
}

std::string meta_json(const RunMeta& meta, const std::string& body) {
  nlohmann::json j = meta_object(meta);
  // `body` may hold several JSON objects separated by newlines.
  std::size_t start = 0;
  while (start < body.size()) {
    auto end = body.find('\n', start);
    if (end == std::string::npos) end = body.size();
    const std::string part = body.substr(start, end - start);
    if (!part.empty()) {
      const auto obj = nlohmann::json::parse(part, nullptr, false);
      if (obj.is_discarded() || !obj.is_object()) throw Error("internal: malformed JSON fragment");
      j.update(obj);
    }
    start = end + 1;
  }
  return j.dump(2) + "\n";
}

void write_gnuplot_script(std::ostream& os, const std::string& title, const std::string& output_png,
                          const std::vector<PlotSeries>& series) {
  os << "# gnuplot script written by youngwalk " << tool_version() << "\n";
  os << "set datafile separator ','\nset datafile commentschars '#'\n";
  os << "set terminal pngcairo size 900,600\nset output '" << output_png << "'\n";
  os << "set title '" << title << "'\nset key outside right\nset grid\n";
  os << "plot ";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    os << (i ? ", \\\n     " : "") << "'" << s.csv_file << "' every ::1 using " << s.x_column << ":" << s.y_column
       << " with lines title '" << s.title << "'";
  }
  os << "\n";
}

}  // namespace yw

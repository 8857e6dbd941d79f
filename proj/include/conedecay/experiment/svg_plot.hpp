#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace conedecay::experiment {

struct PlotSeries {
  std::string label;
  std::vector<double> t;
  std::vector<double> values;
};

/// Two side-by-side panels: log E against t, and log E against log t.
/// Non-positive samples (and t <= 0 on the log-log panel) are skipped.
std::string decay_svg(const std::string& title, const std::vector<PlotSeries>& series);
void write_decay_svg(const std::filesystem::path& path, const std::string& title,
                     const std::vector<PlotSeries>& series);

}  // namespace conedecay::experiment

#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "fkwave/field.hpp"
#include "fkwave/lattice.hpp"

namespace fkwave {

using Json = nlohmann::ordered_json;

// report.json schema v1: config echo + diagnostics + timestamp.
Json make_report(const std::string& command, const Json& config, const Json& body);
void write_report(const Json& report, const std::string& dir);

void write_trajectory_csv(const std::vector<TrajectorySample>& traj, const std::string& path);

// Simple SVG line plot of one or more named series over x.
struct PlotSeries {
    std::string name;
    const std::vector<double>* y;
};
void write_svg_plot(const std::vector<double>& x, const std::vector<PlotSeries>& series,
                    const std::string& title, const std::string& path);

} // namespace fkwave

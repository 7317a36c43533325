#include "fkwave/report.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace fkwave {

Json make_report(const std::string& command, const Json& config, const Json& body) {
    Json rep;
    rep["schema"] = "fkwave-report/1";
    rep["command"] = command;
    const auto now = std::chrono::system_clock::now();
    rep["timestamp_unix"] =
        std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
    rep["config"] = config;
    rep["result"] = body;
    return rep;
}

void write_report(const Json& report, const std::string& dir) {
    std::filesystem::create_directories(dir);
    std::ofstream(std::filesystem::path(dir) / "report.json") << report.dump(2) << "\n";
}

void write_trajectory_csv(const std::vector<TrajectorySample>& traj, const std::string& path) {
    std::ofstream out(path);
    out << "t,max_error,energy\n";
    char buf[96];
    for (const auto& s : traj) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", s.t, s.max_error, s.energy);
        out << buf;
    }
}

void write_svg_plot(const std::vector<double>& x, const std::vector<PlotSeries>& series,
                    const std::string& title, const std::string& path) {
    const int W = 900, H = 480, ml = 60, mr = 20, mt = 34, mb = 40;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (double v : x) {
        xmin = std::min(xmin, v);
        xmax = std::max(xmax, v);
    }
    for (const auto& s : series)
        for (double v : *s.y) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    if (!(xmax > xmin)) xmax = xmin + 1;
    if (!(ymax > ymin)) {
        ymax = ymin + 1;
        ymin -= 1;
    }
    const double yr = ymax - ymin;
    ymin -= 0.05 * yr;
    ymax += 0.05 * yr;
    auto px = [&](double v) { return ml + (v - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto py = [&](double v) { return H - mb - (v - ymin) / (ymax - ymin) * (H - mt - mb); };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"};

    std::ofstream out(path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    out << "<text x='" << W / 2 << "' y='20' text-anchor='middle' font-size='15'>" << title
        << "</text>\n";
    // axes
    out << "<line x1='" << ml << "' y1='" << H - mb << "' x2='" << W - mr << "' y2='" << H - mb
        << "' stroke='black'/>\n";
    out << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << H - mb
        << "' stroke='black'/>\n";
    char buf[64];
    for (int t = 0; t <= 4; ++t) {
        const double xv = xmin + (xmax - xmin) * t / 4.0;
        const double yv = ymin + (ymax - ymin) * t / 4.0;
        std::snprintf(buf, sizeof buf, "%.4g", xv);
        out << "<text x='" << px(xv) << "' y='" << H - mb + 16
            << "' text-anchor='middle' font-size='11'>" << buf << "</text>\n";
        std::snprintf(buf, sizeof buf, "%.4g", yv);
        out << "<text x='" << ml - 6 << "' y='" << py(yv) + 4
            << "' text-anchor='end' font-size='11'>" << buf << "</text>\n";
    }
    int ci = 0;
    for (const auto& s : series) {
        out << "<polyline fill='none' stroke='" << colors[ci % 5] << "' stroke-width='1.2' points='";
        const size_t stride = std::max<size_t>(1, x.size() / 4000);
        for (size_t i = 0; i < x.size() && i < s.y->size(); i += stride)
            out << px(x[i]) << "," << py((*s.y)[i]) << " ";
        out << "'/>\n";
        out << "<text x='" << W - mr - 10 << "' y='" << mt + 16 * (ci + 1)
            << "' text-anchor='end' font-size='12' fill='" << colors[ci % 5] << "'>" << s.name
            << "</text>\n";
        ++ci;
    }
    out << "</svg>\n";
}

} // namespace fkwave

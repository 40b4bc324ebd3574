#include "idem/harness/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

namespace idem::harness {

namespace {

using SortKey = std::tuple<int, int, int, int, int>;

SortKey sort_key(const ea::EAConfig& c)
{
    return {c.n, c.representation == ea::Representation::gp ? 0 : 1,
            c.encoding == genome::Encoding::unrestricted ? 0 : 1, c.local_search ? 1 : 0, fit_number(c.objective)};
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string fmt_px(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape_xml(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

}  // namespace

std::vector<ConfigGroup> group_records(const std::vector<RunRecord>& records)
{
    std::map<SortKey, ConfigGroup> groups;
    for (const auto& rec : records) {
        if (!rec.ok()) {
            continue;
        }
        auto& g = groups[sort_key(rec.config)];
        if (g.values.empty()) {
            g.n = rec.config.n;
            g.label = config_label(rec.config);
            g.config = rec.config;
        }
        g.values.push_back(rec.best_scalar);
        g.ints.push_back(rec.best_int);
    }
    std::vector<ConfigGroup> out;
    for (auto& [key, g] : groups) {
        out.push_back(std::move(g));
    }
    return out;
}

std::string best_table(const std::vector<ConfigGroup>& groups)
{
    std::set<int> dims;
    std::map<std::pair<std::string, int>, std::int64_t> best;
    std::map<SortKey, std::string> rows;  // keyed with n zeroed out
    for (const auto& g : groups) {
        dims.insert(g.n);
        best[{g.label, g.n}] = *std::max_element(g.ints.begin(), g.ints.end());
        auto key = sort_key(g.config);
        std::get<0>(key) = 0;
        rows.emplace(key, g.label);
    }
    std::vector<std::string> labels;
    for (const auto& [key, label] : rows) {
        labels.push_back(label);
    }

    std::string out = "| n |";
    std::string rule = "|---|";
    for (int n : dims) {
        out += " " + std::to_string(n) + " |";
        rule += "---:|";
    }
    out += "\n" + rule + "\n";
    for (const auto& label : labels) {
        out += "| " + label + " |";
        for (int n : dims) {
            const auto it = best.find({label, n});
            out += " " + (it == best.end() ? std::string("-") : std::to_string(it->second)) + " |";
        }
        out += "\n";
    }
    return out;
}

std::string boxplot_svg(int n, const std::vector<ConfigGroup>& groups)
{
    constexpr double left = 70.0;
    constexpr double top = 40.0;
    constexpr double plot_height = 300.0;
    constexpr double slot = 110.0;
    constexpr double box_width = 50.0;
    const double width = left + slot * static_cast<double>(std::max<std::size_t>(groups.size(), 1)) + 20.0;
    const double height = top + plot_height + 90.0;

    std::vector<stats::Summary> summaries;
    double lo = INFINITY;
    double hi = -INFINITY;
    for (const auto& g : groups) {
        summaries.push_back(stats::summarize(g.values));
        lo = std::min(lo, summaries.back().min);
        hi = std::max(hi, summaries.back().max);
    }
    if (groups.empty()) {
        lo = 0.0;
        hi = 1.0;
    }
    if (hi - lo < 1e-9) {
        lo -= 1.0;
        hi += 1.0;
    }
    const double pad = (hi - lo) * 0.05;
    lo -= pad;
    hi += pad;
    auto y = [&](double v) { return top + plot_height * (hi - v) / (hi - lo); };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt_px(width) + "\" height=\"" + fmt_px(height) +
           "\" viewBox=\"0 0 " + fmt_px(width) + " " + fmt_px(height) + "\" font-family=\"sans-serif\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt_px(width / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">Comparison for n = " +
           std::to_string(n) + " variables</text>\n";
    svg += "<line x1=\"" + fmt_px(left) + "\" y1=\"" + fmt_px(top) + "\" x2=\"" + fmt_px(left) + "\" y2=\"" +
           fmt_px(top + plot_height) + "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 5; ++t) {
        const double v = lo + (hi - lo) * t / 5.0;
        svg += "<line x1=\"" + fmt_px(left - 5) + "\" y1=\"" + fmt_px(y(v)) + "\" x2=\"" + fmt_px(left) + "\" y2=\"" +
               fmt_px(y(v)) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fmt_px(left - 8) + "\" y=\"" + fmt_px(y(v) + 4) +
               "\" text-anchor=\"end\" font-size=\"11\">" + fmt(v) + "</text>\n";
    }
    for (std::size_t i = 0; i < groups.size(); ++i) {
        const auto& s = summaries[i];
        const double cx = left + slot * (static_cast<double>(i) + 0.5);
        const double x0 = cx - box_width / 2;
        const double x1 = cx + box_width / 2;
        svg += "<g>\n";
        svg += "<title>" + escape_xml(groups[i].label) + ": min " + fmt(s.min) + ", q1 " + fmt(s.q1) + ", median " +
               fmt(s.median) + ", q3 " + fmt(s.q3) + ", max " + fmt(s.max) + "</title>\n";
        svg += "<line x1=\"" + fmt_px(cx) + "\" y1=\"" + fmt_px(y(s.max)) + "\" x2=\"" + fmt_px(cx) + "\" y2=\"" +
               fmt_px(y(s.q3)) + "\" stroke=\"black\"/>\n";
        svg += "<line x1=\"" + fmt_px(cx) + "\" y1=\"" + fmt_px(y(s.q1)) + "\" x2=\"" + fmt_px(cx) + "\" y2=\"" +
               fmt_px(y(s.min)) + "\" stroke=\"black\"/>\n";
        for (double v : {s.min, s.max}) {
            svg += "<line x1=\"" + fmt_px(cx - 10) + "\" y1=\"" + fmt_px(y(v)) + "\" x2=\"" + fmt_px(cx + 10) +
                   "\" y2=\"" + fmt_px(y(v)) + "\" stroke=\"black\"/>\n";
        }
        svg += "<rect x=\"" + fmt_px(x0) + "\" y=\"" + fmt_px(y(s.q3)) + "\" width=\"" + fmt_px(x1 - x0) +
               "\" height=\"" + fmt_px(std::max(0.0, y(s.q1) - y(s.q3))) +
               "\" fill=\"#9ecae1\" stroke=\"black\"/>\n";
        svg += "<line x1=\"" + fmt_px(x0) + "\" y1=\"" + fmt_px(y(s.median)) + "\" x2=\"" + fmt_px(x1) + "\" y2=\"" +
               fmt_px(y(s.median)) + "\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + fmt_px(cx) + "\" y=\"" + fmt_px(top + plot_height + 20) +
               "\" text-anchor=\"middle\" font-size=\"11\">" + escape_xml(groups[i].label) + "</text>\n";
        svg += "</g>\n";
    }
    svg += "</svg>\n";
    return svg;
}

std::vector<std::filesystem::path> write_report(const std::vector<RunRecord>& records,
                                                const std::filesystem::path& out_dir)
{
    const auto groups = group_records(records);
    if (groups.empty()) {
        throw std::invalid_argument("report: no successful run records");
    }
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;

    const auto table_path = out_dir / "table.md";
    std::ofstream(table_path, std::ios::binary) << best_table(groups);
    written.push_back(table_path);

    std::map<int, std::vector<ConfigGroup>> by_n;
    for (const auto& g : groups) {
        by_n[g.n].push_back(g);
    }
    for (const auto& [n, gs] : by_n) {
        const auto path = out_dir / ("boxplot_n" + std::to_string(n) + ".svg");
        std::ofstream(path, std::ios::binary) << boxplot_svg(n, gs);
        written.push_back(path);
    }
    return written;
}

}  // namespace idem::harness

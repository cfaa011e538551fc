#include "cotforge/report/figures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cotforge/metrics/metrics.hpp"
#include "cotforge/metrics/tables.hpp"

namespace cotforge::report {

namespace {

Result<std::vector<Bar>> bars_of(const bench::OutcomeTable& table, bool eag) {
    if (auto s = table.validate(); !s.ok()) return s.error();
    std::vector<Bar> bars;
    bars.reserve(table.models.size());
    for (const auto& model : table.models) {
        auto summary = metrics::summarize(table, model);
        if (!summary.ok()) return summary.error();
        bars.push_back(Bar{model, eag ? summary.value().avg_eag_pct
                                      : summary.value().total_avg_pct});
    }
    return bars;
}

std::string escape_xml(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

std::string fmt1(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

/// Smallest step from {1,2,5}*10^n that covers the span in at most six ticks.
long tick_step(long span) {
    if (span <= 0) return 1;
    long scale = 1;
    while (true) {
        for (long base : {1L, 2L, 5L}) {
            long step = base * scale;
            if (span / step <= 6) return step;
        }
        scale *= 10;
    }
}

Status write_file(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) return make_error(ErrorKind::io, "cannot write " + path.string());
    out << content;
    out.flush();
    if (!out) return make_error(ErrorKind::io, "write failed for " + path.string());
    return Status::success();
}

} // namespace

Result<std::vector<Bar>> avg_bars(const bench::OutcomeTable& table) {
    return bars_of(table, /*eag=*/false);
}

Result<std::vector<Bar>> eag_bars(const bench::OutcomeTable& table) {
    return bars_of(table, /*eag=*/true);
}

std::string render_dat(const std::vector<Bar>& bars) {
    std::ostringstream out;
    for (const auto& bar : bars) out << bar.label << '\t' << bar.value << '\n';
    return out.str();
}

std::string render_svg(const std::vector<Bar>& bars, const std::string& title,
                       const std::string& unit) {
    constexpr double kBarWidth = 64.0;
    constexpr double kGap = 28.0;
    constexpr double kMarginLeft = 76.0;
    constexpr double kMarginRight = 30.0;
    constexpr double kPlotTop = 56.0;
    constexpr double kPlotBottom = 300.0;
    constexpr double kHeight = 430.0;

    const std::size_t n = bars.size();
    const double width =
        kMarginLeft + kMarginRight + (n == 0 ? kBarWidth : n * kBarWidth + (n - 1) * kGap);

    long lo = 0;
    long hi = 0;
    for (const auto& bar : bars) {
        lo = std::min(lo, bar.value);
        hi = std::max(hi, bar.value);
    }
    if (lo == hi) hi = lo + 1;
    const long step = tick_step(hi - lo);
    lo = static_cast<long>(std::floor(static_cast<double>(lo) / step)) * step;
    hi = static_cast<long>(std::ceil(static_cast<double>(hi) / step)) * step;

    const double plot_h = kPlotBottom - kPlotTop;
    auto y_of = [&](double v) { return kPlotTop + (hi - v) * plot_h / (hi - lo); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt1(width)
        << "\" height=\"" << fmt1(kHeight) << "\" viewBox=\"0 0 " << fmt1(width) << ' '
        << fmt1(kHeight) << "\" font-family=\"Helvetica, Arial, sans-serif\">\n";
    svg << "  <rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    svg << "  <text x=\"" << fmt1(width / 2)
        << "\" y=\"28\" text-anchor=\"middle\" font-size=\"18\" fill=\"#222222\">"
        << escape_xml(title) << "</text>\n";

    for (long t = lo; t <= hi; t += step) {
        const double y = y_of(static_cast<double>(t));
        const bool zero = t == 0;
        svg << "  <line x1=\"" << fmt1(kMarginLeft - 6) << "\" y1=\"" << fmt1(y) << "\" x2=\""
            << fmt1(width - kMarginRight) << "\" y2=\"" << fmt1(y) << "\" stroke=\""
            << (zero ? "#555555" : "#dddddd") << "\" stroke-width=\"" << (zero ? "1.5" : "1")
            << "\"/>\n";
        svg << "  <text x=\"" << fmt1(kMarginLeft - 12) << "\" y=\"" << fmt1(y + 4)
            << "\" text-anchor=\"end\" font-size=\"12\" fill=\"#444444\">" << t
            << escape_xml(unit) << "</text>\n";
    }

    const double zero_y = y_of(0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const Bar& bar = bars[i];
        const double x = kMarginLeft + i * (kBarWidth + kGap);
        const double v_y = y_of(static_cast<double>(bar.value));
        const double top = std::min(zero_y, v_y);
        const double h = std::abs(zero_y - v_y);
        svg << "  <rect x=\"" << fmt1(x) << "\" y=\"" << fmt1(top) << "\" width=\""
            << fmt1(kBarWidth) << "\" height=\"" << fmt1(h)
            << "\" fill=\"" << (bar.value < 0 ? "#e15759" : "#4e79a7") << "\"/>\n";
        const double value_y = bar.value < 0 ? v_y + 16 : v_y - 6;
        svg << "  <text x=\"" << fmt1(x + kBarWidth / 2) << "\" y=\"" << fmt1(value_y)
            << "\" text-anchor=\"middle\" font-size=\"13\" fill=\"#222222\">" << bar.value
            << escape_xml(unit) << "</text>\n";
        svg << "  <text x=\"" << fmt1(x + kBarWidth / 2) << "\" y=\"" << fmt1(kPlotBottom + 18)
            << "\" text-anchor=\"end\" font-size=\"12\" fill=\"#333333\" transform=\"rotate(-30 "
            << fmt1(x + kBarWidth / 2) << ' ' << fmt1(kPlotBottom + 18) << ")\">"
            << escape_xml(bar.label) << "</text>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

Status write_figures(const bench::OutcomeTable& table, const std::filesystem::path& dir) {
    auto avg = avg_bars(table);
    if (!avg.ok()) return avg.error();
    auto eag = eag_bars(table);
    if (!eag.ok()) return eag.error();

    const std::string avg_title = "Total " + metrics::metric_avg_label(table.k);
    const std::string eag_title = "Average " + metrics::metric_eag_label(table.k);

    if (auto s = write_file(dir / "fig_avg.dat", render_dat(avg.value())); !s.ok()) return s;
    if (auto s = write_file(dir / "fig_eag.dat", render_dat(eag.value())); !s.ok()) return s;
    if (auto s = write_file(dir / "fig_avg.svg", render_svg(avg.value(), avg_title)); !s.ok())
        return s;
    if (auto s = write_file(dir / "fig_eag.svg", render_svg(eag.value(), eag_title)); !s.ok())
        return s;
    return Status::success();
}

} // namespace cotforge::report

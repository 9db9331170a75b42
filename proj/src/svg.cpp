#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mpt/bench.hpp"

namespace mpt {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 120.0;  // room for the color legend
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

bool parameter_field(std::string_view f) {
    return f == "xi_k_ratio" || f == "xi_sum" || f == "k_sum" || f.starts_with("xi_") ||
           (f.size() > 1 && f[0] == 'K');
}

struct Axis {
    double lo;
    double hi;
    bool log;

    double normalized(double v) const {
        const double a = log ? std::log10(v) : v;
        return hi > lo ? (a - lo) / (hi - lo) : 0.5;
    }
};

Axis make_axis(const std::vector<double>& values, bool want_log) {
    const bool positive = std::all_of(values.begin(), values.end(), [](double v) { return v > 0.0; });
    Axis ax{0.0, 0.0, want_log && positive};
    std::vector<double> t;
    for (double v : values) {
        if (!std::isfinite(v)) continue;
        t.push_back(ax.log ? std::log10(v) : v);
    }
    if (t.empty()) return {0.0, 1.0, false};
    const auto [mn, mx] = std::minmax_element(t.begin(), t.end());
    ax.lo = *mn;
    ax.hi = *mx;
    if (ax.hi == ax.lo) {
        const double pad = ax.log ? 0.5 : std::max(0.5, 0.05 * std::abs(ax.lo));
        ax.lo -= pad;
        ax.hi += pad;
    } else if (!ax.log) {
        const double pad = 0.05 * (ax.hi - ax.lo);
        ax.lo -= pad;
        ax.hi += pad;
    } else {
        ax.lo = std::floor(ax.lo);
        ax.hi = std::ceil(ax.hi);
        if (ax.hi == ax.lo) ax.hi += 1.0;
    }
    return ax;
}

std::string tick_label(const Axis& ax, double t) {
    std::ostringstream os;
    if (ax.log) {
        os << "1e" << static_cast<long>(std::lround(t));
    } else {
        os.precision(4);
        os << t;
    }
    return os.str();
}

std::string ramp(double t) {
    t = std::clamp(std::isfinite(t) ? t : 0.0, 0.0, 1.0);
    const int red = static_cast<int>(std::lround(255.0 * t));
    const int blue = 255 - red;
    std::ostringstream os;
    os << "rgb(" << red << ",0," << blue << ")";
    return os.str();
}

}  // namespace

std::string render_scatter_svg(const std::vector<RunRecord>& records, std::string_view x_field,
                               std::string_view y_field, std::string_view color_field) {
    if (records.empty()) throw std::invalid_argument("render_scatter_svg: no records");
    std::vector<double> xs, ys, cs;
    for (const auto& r : records) {
        xs.push_back(record_field(r, x_field));
        ys.push_back(record_field(r, y_field));
        cs.push_back(record_field(r, color_field));
    }
    const Axis xa = make_axis(xs, parameter_field(x_field));
    const Axis ya = make_axis(ys, false);
    const Axis ca = make_axis(cs, true);

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double v) { return kLeft + xa.normalized(v) * pw; };
    auto py = [&](double v) { return kTop + (1.0 - ya.normalized(v)) * ph; };

    std::ostringstream os;
    os.precision(6);
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
       << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";

    // Axes and ticks.
    os << "<g stroke=\"black\" stroke-width=\"1\">\n"
       << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + ph << "\" x2=\"" << kLeft + pw << "\" y2=\"" << kTop + ph
       << "\"/>\n"
       << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kTop + ph << "\"/>\n"
       << "</g>\n";
    os << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    const int xticks = xa.log ? static_cast<int>(xa.hi - xa.lo) : 5;
    for (int k = 0; k <= xticks; ++k) {
        const double t = xa.lo + (xa.hi - xa.lo) * k / xticks;
        const double x = kLeft + pw * k / xticks;
        os << "<line x1=\"" << x << "\" y1=\"" << kTop + ph << "\" x2=\"" << x << "\" y2=\"" << kTop + ph + 5
           << "\" stroke=\"black\"/>\n"
           << "<text x=\"" << x << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">" << tick_label(xa, t)
           << "</text>\n";
    }
    for (int k = 0; k <= 5; ++k) {
        const double t = ya.lo + (ya.hi - ya.lo) * k / 5;
        const double y = kTop + ph - ph * k / 5;
        os << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << y << "\" x2=\"" << kLeft << "\" y2=\"" << y
           << "\" stroke=\"black\"/>\n"
           << "<text x=\"" << kLeft - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">" << tick_label(ya, t)
           << "</text>\n";
    }
    os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\" font-size=\"13\">"
       << x_field << (xa.log ? " (log scale)" : "") << "</text>\n"
       << "<text x=\"20\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 20 "
       << kTop + ph / 2 << ")\">" << y_field << "</text>\n";

    // Color legend: a 10-step ramp.
    const double lx = kLeft + pw + 30;
    os << "<text x=\"" << lx << "\" y=\"" << kTop - 10 << "\">" << color_field << "</text>\n";
    for (int k = 0; k < 10; ++k) {
        os << "<rect x=\"" << lx << "\" y=\"" << kTop + ph - (k + 1) * ph / 10 << "\" width=\"16\" height=\""
           << ph / 10 << "\" fill=\"" << ramp((k + 0.5) / 10) << "\"/>\n";
    }
    os << "<text x=\"" << lx + 20 << "\" y=\"" << kTop + ph << "\">" << tick_label(ca, ca.lo) << "</text>\n"
       << "<text x=\"" << lx + 20 << "\" y=\"" << kTop + 10 << "\">" << tick_label(ca, ca.hi) << "</text>\n"
       << "</g>\n";

    os << "<g stroke=\"black\" stroke-width=\"0.5\">\n";
    for (std::size_t k = 0; k < records.size(); ++k) {
        if (!std::isfinite(xs[k]) || !std::isfinite(ys[k])) continue;
        os << "<circle cx=\"" << px(xs[k]) << "\" cy=\"" << py(ys[k]) << "\" r=\"4\" fill=\""
           << ramp(ca.normalized(cs[k])) << "\"/>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

void emit_scatter_svg(const std::vector<RunRecord>& records, std::string_view x_field, std::string_view y_field,
                      std::string_view color_field, const std::string& path) {
    const std::string svg = render_scatter_svg(records, x_field, y_field, color_field);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << svg;
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace mpt

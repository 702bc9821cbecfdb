#include "capstruct/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "capstruct/errors.hpp"

namespace capstruct::svg {

namespace {

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string header(int width, int height) {
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           std::to_string(width) + "\" height=\"" + std::to_string(height) +
           "\" viewBox=\"0 0 " + std::to_string(width) + " " + std::to_string(height) +
           "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string text_at(double x, double y, const std::string& body, int size = 11,
                    const std::string& anchor = "start") {
    return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"sans-serif\" "
           "font-size=\"" + std::to_string(size) + "\" text-anchor=\"" + anchor + "\">" +
           escape(body) + "</text>\n";
}

// Blue through white to red; u in [0, 1].
std::string ramp_color(double u) {
    u = std::min(std::max(u, 0.0), 1.0);
    auto lerp = [](double a, double b, double t) { return a + (b - a) * t; };
    double r, g, b;
    if (u < 0.5) {
        double t = u / 0.5;
        r = lerp(33, 247, t);
        g = lerp(102, 247, t);
        b = lerp(172, 247, t);
    } else {
        double t = (u - 0.5) / 0.5;
        r = lerp(247, 178, t);
        g = lerp(247, 24, t);
        b = lerp(247, 43, t);
    }
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", static_cast<int>(r),
                  static_cast<int>(g), static_cast<int>(b));
    return buf;
}

} // namespace

std::string line_chart(const SeriesOutput& series, const std::string& title) {
    if (series.rows() == 0 || series.cols() == 0) {
        throw ContractError("cannot chart an empty series");
    }
    const int width = 960, height = 480;
    const double left = 70, right = width - 20, top = 40, bottom = height - 50;

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double v : series.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi <= lo) {
        hi = lo + 1.0;
        lo -= 1.0;
    } else {
        double pad = 0.05 * (hi - lo);
        lo -= pad;
        hi += pad;
    }

    const double denom = series.rows() > 1 ? static_cast<double>(series.rows() - 1) : 1.0;
    auto xpos = [&](std::size_t r) {
        return left + (right - left) * static_cast<double>(r) / denom;
    };
    auto ypos = [&](double v) { return bottom - (bottom - top) * (v - lo) / (hi - lo); };

    std::string out = header(width, height);
    out += text_at(width / 2.0, 22, title, 14, "middle");
    out += "<line x1=\"" + num(left) + "\" y1=\"" + num(top) + "\" x2=\"" + num(left) +
           "\" y2=\"" + num(bottom) + "\" stroke=\"#333333\"/>\n";
    out += "<line x1=\"" + num(left) + "\" y1=\"" + num(bottom) + "\" x2=\"" + num(right) +
           "\" y2=\"" + num(bottom) + "\" stroke=\"#333333\"/>\n";
    out += text_at(left - 6, bottom + 4, num(lo), 10, "end");
    out += text_at(left - 6, top + 4, num(hi), 10, "end");
    out += text_at(left, bottom + 18, series.index.front().iso(), 10, "start");
    out += text_at(right, bottom + 18, series.index.back().iso(), 10, "end");

    for (std::size_t c = 0; c < series.cols(); ++c) {
        std::string points;
        for (std::size_t r = 0; r < series.rows(); ++r) {
            points += num(xpos(r)) + "," + num(ypos(series.at(r, c))) + " ";
        }
        const char* color = kPalette[c % kPaletteSize];
        out += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
        out += "<rect x=\"" + num(left + 10 + 110.0 * static_cast<double>(c)) + "\" y=\"" +
               num(top - 26) + "\" width=\"10\" height=\"10\" fill=\"" + color + "\"/>\n";
        out += text_at(left + 24 + 110.0 * static_cast<double>(c), top - 17,
                       series.names[c], 10);
    }
    out += "</svg>\n";
    return out;
}

std::string heatmap(const DistanceMatrix& matrix, const std::vector<std::size_t>& order,
                    const std::string& title) {
    const std::size_t n = matrix.size();
    if (n == 0) {
        throw ContractError("cannot render an empty matrix");
    }
    std::vector<std::size_t> perm(n);
    if (order.empty()) {
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    } else {
        if (order.size() != n) {
            throw ContractError("heatmap order length does not match matrix");
        }
        perm = order;
    }
    double hi = 0.0;
    for (double v : matrix.entries) hi = std::max(hi, v);
    if (hi <= 0.0) hi = 1.0;

    const double cell = std::max(2.0, std::min(8.0, 700.0 / static_cast<double>(n)));
    const double left = 80, top = 50;
    const int width = static_cast<int>(left + cell * static_cast<double>(n) + 30);
    const int height = static_cast<int>(top + cell * static_cast<double>(n) + 40);

    std::string out = header(width, height);
    out += text_at(width / 2.0, 22, title, 14, "middle");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double v = matrix.at(perm[i], perm[j]);
            out += "<rect x=\"" + num(left + cell * static_cast<double>(j)) + "\" y=\"" +
                   num(top + cell * static_cast<double>(i)) + "\" width=\"" + num(cell) +
                   "\" height=\"" + num(cell) + "\" fill=\"" + ramp_color(v / hi) + "\"/>\n";
        }
    }
    out += text_at(left - 6, top + 10, matrix.labels[perm.front()], 9, "end");
    out += text_at(left - 6, top + cell * static_cast<double>(n), matrix.labels[perm.back()],
                   9, "end");
    out += text_at(left, top + cell * static_cast<double>(n) + 16,
                   "max distance " + num(hi), 10);
    out += "</svg>\n";
    return out;
}

std::string grid_heatmap(const std::vector<std::string>& row_labels,
                         const std::vector<std::string>& col_labels,
                         const std::vector<double>& values,
                         const std::string& title) {
    const std::size_t rows = row_labels.size();
    const std::size_t cols = col_labels.size();
    if (rows == 0 || cols == 0 || values.size() != rows * cols) {
        throw ContractError("grid heatmap dimensions do not match values");
    }
    double hi = 0.0;
    for (double v : values) hi = std::max(hi, v);
    if (hi <= 0.0) hi = 1.0;

    const double cw = std::max(3.0, std::min(14.0, 800.0 / static_cast<double>(cols)));
    const double ch = std::max(1.0, std::min(4.0, 560.0 / static_cast<double>(rows)));
    const double left = 80, top = 50;
    const int width = static_cast<int>(left + cw * static_cast<double>(cols) + 30);
    const int height = static_cast<int>(top + ch * static_cast<double>(rows) + 40);

    std::string out = header(width, height);
    out += text_at(width / 2.0, 22, title, 14, "middle");
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            out += "<rect x=\"" + num(left + cw * static_cast<double>(c)) + "\" y=\"" +
                   num(top + ch * static_cast<double>(r)) + "\" width=\"" + num(cw) +
                   "\" height=\"" + num(ch) + "\" fill=\"" +
                   ramp_color(values[r * cols + c] / hi) + "\"/>\n";
        }
    }
    out += text_at(left - 6, top + 10, row_labels.front(), 9, "end");
    out += text_at(left - 6, top + ch * static_cast<double>(rows), row_labels.back(), 9, "end");
    out += text_at(left, top + ch * static_cast<double>(rows) + 16,
                   "max value " + num(hi), 10);
    out += "</svg>\n";
    return out;
}

std::string dendrogram(const Dendrogram& dend, const std::string& title) {
    const std::size_t n = dend.leaf_count();
    if (n < 2) {
        throw ContractError("dendrogram needs at least two leaves");
    }
    auto order = leaf_order(dend);
    const int width = 960, height = 520;
    const double left = 50, right = width - 20, top = 50, bottom = height - 60;

    double hmax = 0.0;
    for (const auto& m : dend.merges) hmax = std::max(hmax, m.height);
    if (hmax <= 0.0) hmax = 1.0;

    // Leaf x positions in display order; internal nodes at child midpoints.
    std::vector<double> x(2 * n - 1, 0.0), y(2 * n - 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t leaf = order[i];
        x[leaf] = left + (right - left) * (static_cast<double>(i) + 0.5) /
                             static_cast<double>(n);
        y[leaf] = bottom;
    }
    std::string out = header(width, height);
    out += text_at(width / 2.0, 22, title, 14, "middle");
    for (std::size_t k = 0; k < dend.merges.size(); ++k) {
        const auto& m = dend.merges[k];
        std::size_t node = n + k;
        double yk = bottom - (bottom - top) * (m.height / hmax);
        x[node] = 0.5 * (x[m.left] + x[m.right]);
        y[node] = yk;
        // One elbow per merge: up from both children, across at the height.
        out += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1\" points=\"" +
               num(x[m.left]) + "," + num(y[m.left]) + " " + num(x[m.left]) + "," + num(yk) +
               " " + num(x[m.right]) + "," + num(yk) + " " + num(x[m.right]) + "," +
               num(y[m.right]) + "\"/>\n";
    }
    if (n <= 40) {
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t leaf = order[i];
            out += "<text x=\"" + num(x[leaf]) + "\" y=\"" + num(bottom + 12) +
                   "\" font-family=\"sans-serif\" font-size=\"9\" text-anchor=\"end\" "
                   "transform=\"rotate(-60 " + num(x[leaf]) + " " + num(bottom + 12) + ")\">" +
                   escape(dend.leaf_labels[leaf]) + "</text>\n";
        }
    } else {
        out += text_at(left, bottom + 18, dend.leaf_labels[order.front()], 9, "start");
        out += text_at(right, bottom + 18, dend.leaf_labels[order.back()], 9, "end");
    }
    out += text_at(left, top - 8, "merge height max " + num(hmax), 10);
    out += "</svg>\n";
    return out;
}

} // namespace capstruct::svg

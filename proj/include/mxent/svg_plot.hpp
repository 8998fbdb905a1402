#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mxent/csv.hpp"

namespace mxent {

// Scatter plot of two CSV columns on a fixed 800x600 canvas, optionally
// colored by a third (categorical) column. Output is plain SVG text with no
// external resources, byte-identical for identical inputs.
struct PlotSpec {
    std::string x_column;
    std::string y_column;
    std::string color_column;  // empty: single series
    double x_min = 0.0;
    double x_max = 1.0;
    double y_min = 0.0;
    double y_max = 1.0;
};

namespace detail {

inline std::string svg_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string svg_tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

inline std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (const char c : s) {
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

inline double parse_cell(const std::string& cell, std::size_t row, const std::string& col) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(cell, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != cell.size() || cell.empty())
        throw std::invalid_argument("row " + std::to_string(row + 1) + ": value '" + cell +
                                    "' in column '" + col + "' is not numeric");
    return v;
}

inline const char* kPalette[10] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                   "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace detail

inline std::string render_scatter_svg(const CsvTable& table, const PlotSpec& spec) {
    const auto xcol = table.column(spec.x_column);
    if (!xcol) throw std::invalid_argument("unknown column: " + spec.x_column);
    const auto ycol = table.column(spec.y_column);
    if (!ycol) throw std::invalid_argument("unknown column: " + spec.y_column);
    std::optional<std::size_t> ccol;
    if (!spec.color_column.empty()) {
        ccol = table.column(spec.color_column);
        if (!ccol) throw std::invalid_argument("unknown column: " + spec.color_column);
    }
    if (!(spec.x_max > spec.x_min) || !(spec.y_max > spec.y_min))
        throw std::invalid_argument("empty axis range");

    // fixed geometry: canvas 800x600, plot area with room for a legend
    const double x0 = 70, y0 = 30, w = 540, h = 500;
    const auto sx = [&](double x) { return x0 + (x - spec.x_min) / (spec.x_max - spec.x_min) * w; };
    const auto sy = [&](double y) { return y0 + h - (y - spec.y_min) / (spec.y_max - spec.y_min) * h; };

    std::vector<std::string> categories;
    if (ccol) {
        for (const auto& row : table.rows)
            if (*ccol < row.size()) categories.push_back(row[*ccol]);
        std::sort(categories.begin(), categories.end());
        categories.erase(std::unique(categories.begin(), categories.end()), categories.end());
        bool all_numeric = !categories.empty();
        std::vector<std::pair<double, std::string>> numeric;
        for (const auto& c : categories) {
            try {
                std::size_t used = 0;
                const double v = std::stod(c, &used);
                if (used != c.size()) throw std::invalid_argument(c);
                numeric.emplace_back(v, c);
            } catch (const std::exception&) {
                all_numeric = false;
                break;
            }
        }
        if (all_numeric) {
            std::sort(numeric.begin(), numeric.end());
            categories.clear();
            for (const auto& [v, c] : numeric) categories.push_back(c);
        }
    }
    const auto color_of = [&](const std::string& value) -> std::string {
        const auto it = std::find(categories.begin(), categories.end(), value);
        const auto idx = static_cast<std::size_t>(it - categories.begin());
        return detail::kPalette[idx % 10];
    };

    std::string svg;
    svg.reserve(4096 + table.rows.size() * 64);
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
           "viewBox=\"0 0 800 600\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
    svg += "<defs><clipPath id=\"plotarea\"><rect x=\"" + detail::svg_coord(x0) + "\" y=\"" +
           detail::svg_coord(y0) + "\" width=\"" + detail::svg_coord(w) + "\" height=\"" +
           detail::svg_coord(h) + "\"/></clipPath></defs>\n";
    svg += "<rect x=\"" + detail::svg_coord(x0) + "\" y=\"" + detail::svg_coord(y0) +
           "\" width=\"" + detail::svg_coord(w) + "\" height=\"" + detail::svg_coord(h) +
           "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // ticks and labels, 5 intervals per axis
    for (int i = 0; i <= 5; ++i) {
        const double fx = spec.x_min + (spec.x_max - spec.x_min) * i / 5.0;
        const double px = sx(fx);
        svg += "<line x1=\"" + detail::svg_coord(px) + "\" y1=\"" + detail::svg_coord(y0 + h) +
               "\" x2=\"" + detail::svg_coord(px) + "\" y2=\"" + detail::svg_coord(y0 + h + 6) +
               "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + detail::svg_coord(px) + "\" y=\"" + detail::svg_coord(y0 + h + 20) +
               "\" font-size=\"12\" font-family=\"sans-serif\" text-anchor=\"middle\">" +
               detail::svg_tick_label(fx) + "</text>\n";

        const double fy = spec.y_min + (spec.y_max - spec.y_min) * i / 5.0;
        const double py = sy(fy);
        svg += "<line x1=\"" + detail::svg_coord(x0 - 6) + "\" y1=\"" + detail::svg_coord(py) +
               "\" x2=\"" + detail::svg_coord(x0) + "\" y2=\"" + detail::svg_coord(py) +
               "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + detail::svg_coord(x0 - 10) + "\" y=\"" + detail::svg_coord(py + 4) +
               "\" font-size=\"12\" font-family=\"sans-serif\" text-anchor=\"end\">" +
               detail::svg_tick_label(fy) + "</text>\n";
    }
    svg += "<text x=\"" + detail::svg_coord(x0 + w / 2) + "\" y=\"" + detail::svg_coord(y0 + h + 45) +
           "\" font-size=\"14\" font-family=\"sans-serif\" text-anchor=\"middle\">" +
           detail::xml_escape(spec.x_column) + "</text>\n";
    svg += "<text x=\"20\" y=\"" + detail::svg_coord(y0 + h / 2) +
           "\" font-size=\"14\" font-family=\"sans-serif\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 20 " +
           detail::svg_coord(y0 + h / 2) + ")\">" + detail::xml_escape(spec.y_column) +
           "</text>\n";

    svg += "<g clip-path=\"url(#plotarea)\">\n";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        if (*xcol >= row.size() || *ycol >= row.size())
            throw std::invalid_argument("row " + std::to_string(i + 1) + ": too few fields");
        const double x = detail::parse_cell(row[*xcol], i, spec.x_column);
        const double y = detail::parse_cell(row[*ycol], i, spec.y_column);
        const std::string fill = ccol ? color_of(row[*ccol]) : "#1f77b4";
        svg += "<circle cx=\"" + detail::svg_coord(sx(x)) + "\" cy=\"" +
               detail::svg_coord(sy(y)) + "\" r=\"3\" fill=\"" + fill +
               "\" fill-opacity=\"0.75\"/>\n";
    }
    svg += "</g>\n";

    if (ccol) {
        const double lx = x0 + w + 20;
        double ly = y0 + 10;
        svg += "<text x=\"" + detail::svg_coord(lx) + "\" y=\"" + detail::svg_coord(ly) +
               "\" font-size=\"13\" font-family=\"sans-serif\" font-weight=\"bold\">" +
               detail::xml_escape(spec.color_column) + "</text>\n";
        ly += 8;
        for (const auto& category : categories) {
            ly += 18;
            svg += "<rect x=\"" + detail::svg_coord(lx) + "\" y=\"" + detail::svg_coord(ly - 9) +
                   "\" width=\"12\" height=\"12\" fill=\"" + color_of(category) + "\"/>\n";
            svg += "<text x=\"" + detail::svg_coord(lx + 18) + "\" y=\"" +
                   detail::svg_coord(ly + 2) +
                   "\" font-size=\"12\" font-family=\"sans-serif\">" +
                   detail::xml_escape(category) + "</text>\n";
        }
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace mxent

#pragma once

#include "kneadforge/pwl.hpp"

#include <string>
#include <utility>
#include <vector>

namespace kneadforge {

namespace detail {

constexpr int kSvgSize = 800;
constexpr int kSvgMargin = 60;

struct SvgScale {
    double lo, hi;
    double x(double v) const {
        return kSvgMargin + (v - lo) / (hi - lo) * (kSvgSize - 2 * kSvgMargin);
    }
    double y(double v) const {
        return kSvgSize - kSvgMargin - (v - lo) / (hi - lo) * (kSvgSize - 2 * kSvgMargin);
    }
};

inline std::string svg_num(double v) { return fixed_digits(v, 2); }

inline void svg_line(std::string& out, const SvgScale& sc, double x1, double y1, double x2,
                     double y2, const std::string& stroke, const std::string& extra = "") {
    out += "<line x1=\"" + svg_num(sc.x(x1)) + "\" y1=\"" + svg_num(sc.y(y1)) + "\" x2=\"" +
           svg_num(sc.x(x2)) + "\" y2=\"" + svg_num(sc.y(y2)) + "\" stroke=\"" + stroke +
           "\" " + extra + "/>\n";
}

inline void svg_polyline(std::string& out, const SvgScale& sc,
                         const std::vector<std::pair<double, double>>& pts,
                         const std::string& stroke) {
    out += "<polyline fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"1.2\" points=\"";
    for (const auto& [px, py] : pts)
        out += svg_num(sc.x(px)) + "," + svg_num(sc.y(py)) + " ";
    out += "\"/>\n";
}

inline const char* svg_orbit_color(size_t i) {
    static const char* colors[] = {"#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    return colors[i % 4];
}

inline std::string svg_header() {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
           "viewBox=\"0 0 800 800\">\n<rect width=\"800\" height=\"800\" fill=\"#ffffff\"/>\n";
}

inline std::vector<std::vector<double>> svg_orbit_values(const BimodalMap& m,
                                                         const std::vector<RatFunc>& starts,
                                                         int n) {
    std::vector<std::vector<double>> out;
    for (const RatFunc& x0 : starts) {
        std::vector<double> vals;
        RatFunc x = x0;
        vals.push_back(approx_at(x, m.lambda));
        for (int k = 0; k < n; ++k) {
            x = bm_evaluate(m, x);
            vals.push_back(approx_at(x, m.lambda));
        }
        out.push_back(std::move(vals));
    }
    return out;
}

}  // namespace detail

// Cobweb diagram of the bimodal chart with the orbits of the given start
// points; fixed canvas and coordinate precision keep the output reproducible.
inline std::string svg_cobweb(const BimodalMap& m, const std::vector<RatFunc>& starts, int n) {
    double a = approx_at(bm_halfwidth(m), m.lambda);
    detail::SvgScale sc{-1.08 * a, 1.08 * a};
    std::string out = detail::svg_header();

    detail::svg_line(out, sc, -a, -a, a, -a, "#444444");
    detail::svg_line(out, sc, -a, a, a, a, "#444444");
    detail::svg_line(out, sc, -a, -a, -a, a, "#444444");
    detail::svg_line(out, sc, a, -a, a, a, "#444444");
    detail::svg_line(out, sc, -a, -a, a, a, "#999999", "stroke-dasharray=\"4 3\" ");

    double c1 = approx_at(bm_turning_point(m, 1), m.lambda);
    double c2 = approx_at(bm_turning_point(m, 2), m.lambda);
    double v1 = approx_at(bm_turning_value(m, 1), m.lambda);
    double v2 = approx_at(bm_turning_value(m, 2), m.lambda);
    detail::svg_polyline(out, sc, {{-a, -a}, {c1, v1}, {c2, v2}, {a, a}}, "#1f77b4");

    auto orbits = detail::svg_orbit_values(m, starts, n);
    for (size_t i = 0; i < orbits.size(); ++i) {
        const auto& v = orbits[i];
        std::vector<std::pair<double, double>> pts{{v[0], v[0]}};
        for (size_t k = 0; k + 1 < v.size(); ++k) {
            pts.push_back({v[k], v[k + 1]});
            pts.push_back({v[k + 1], v[k + 1]});
        }
        detail::svg_polyline(out, sc, pts, detail::svg_orbit_color(i));
    }
    out += "</svg>\n";
    return out;
}

// Step-by-step orbit values as stem plots over the iteration index.
inline std::string svg_orbit_bars(const BimodalMap& m, const std::vector<RatFunc>& starts,
                                  int n) {
    double a = approx_at(bm_halfwidth(m), m.lambda);
    std::string out = detail::svg_header();
    detail::SvgScale sx{-0.5, n + 0.5}, sy{-1.08 * a, 1.08 * a};

    auto px = [&](double step) { return sx.x(step); };
    auto py = [&](double val) { return sy.y(val); };
    out += "<line x1=\"" + detail::svg_num(px(-0.5)) + "\" y1=\"" + detail::svg_num(py(0)) +
           "\" x2=\"" + detail::svg_num(px(n + 0.5)) + "\" y2=\"" + detail::svg_num(py(0)) +
           "\" stroke=\"#444444\"/>\n";

    auto orbits = detail::svg_orbit_values(m, starts, n);
    for (size_t i = 0; i < orbits.size(); ++i) {
        const auto& v = orbits[i];
        std::string color = detail::svg_orbit_color(i);
        double shift = 0.12 * (double)i;
        for (size_t k = 0; k < v.size(); ++k) {
            double x = (double)k + shift;
            out += "<line x1=\"" + detail::svg_num(px(x)) + "\" y1=\"" + detail::svg_num(py(0)) +
                   "\" x2=\"" + detail::svg_num(px(x)) + "\" y2=\"" +
                   detail::svg_num(py(v[k])) + "\" stroke=\"" + color + "\"/>\n";
            out += "<circle cx=\"" + detail::svg_num(px(x)) + "\" cy=\"" +
                   detail::svg_num(py(v[k])) + "\" r=\"3\" fill=\"" + color + "\"/>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

}  // namespace kneadforge

#include "sdimlab/svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace sdimlab {

namespace {

constexpr double kScale = 1000;
constexpr double kHeight = 550;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string header(double w, double h) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(w) << "\" height=\"" << num(h)
        << "\" viewBox=\"0 0 " << num(w) << ' ' << num(h) << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    return out.str();
}

}  // namespace

std::string render_graph_svg(const PLGraph& g) {
    std::ostringstream out;
    out << header(kScale, kHeight);
    out << "<g stroke=\"black\" stroke-width=\"1.2\" stroke-linecap=\"round\">\n";
    for (const auto& e : g.edges()) {
        const Point& a = g.vertex(e.u);
        const Point& b = g.vertex(e.v);
        out << "<line x1=\"" << num(kScale * a.x.to_double()) << "\" y1=\"" << num(kHeight - kScale * a.y.to_double())
            << "\" x2=\"" << num(kScale * b.x.to_double()) << "\" y2=\"" << num(kHeight - kScale * b.y.to_double())
            << "\"/>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

std::string render_cloud_svg(const std::vector<Vec2>& cloud) {
    constexpr double kSide = 1000, kMargin = 20;
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (!cloud.empty()) {
        x0 = x1 = cloud.front().x;
        y0 = y1 = cloud.front().y;
        for (const auto& p : cloud) {
            x0 = std::min(x0, p.x), x1 = std::max(x1, p.x);
            y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
        }
    }
    const double span = std::max({x1 - x0, y1 - y0, 1e-12});
    const double s = (kSide - 2 * kMargin) / span;
    const double r = std::clamp(400.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(cloud.size(), 1))), 0.5, 4.0);

    std::ostringstream out;
    out << header(kSide, kSide);
    out << "<g fill=\"black\">\n";
    for (const auto& p : cloud) {
        out << "<circle cx=\"" << num(kMargin + s * (p.x - x0)) << "\" cy=\"" << num(kSide - kMargin - s * (p.y - y0))
            << "\" r=\"" << num(r) << "\"/>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

}  // namespace sdimlab

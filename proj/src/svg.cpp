#include "cy3/cone2.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace cy3 {

namespace {

constexpr double kSize = 400.0;
constexpr double kCenter = 200.0;
constexpr double kRadius = 170.0;

const char* color_of(RayKind k) {
    switch (k) {
        case RayKind::CubicRoot: return "#d62728";
        case RayKind::HessianRoot: return "#1f77b4";
        case RayKind::PEdge: return "#2ca02c";
        case RayKind::E: return "#9467bd";
        case RayKind::Delta: return "#ff7f0e";
        case RayKind::R: return "#8c564b";
    }
    return "#000000";
}

const char* name_of(RayKind k) {
    switch (k) {
        case RayKind::CubicRoot: return "cubic root";
        case RayKind::HessianRoot: return "Hessian root";
        case RayKind::PEdge: return "P edge";
        case RayKind::E: return "E";
        case RayKind::Delta: return "Delta";
        case RayKind::R: return "R";
    }
    return "";
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// Screen coordinates: y grows downward.
std::pair<double, double> to_screen(double ux, double uy, double r) { return {kCenter + r * ux, kCenter - r * uy}; }

}  // namespace

Scene scene_for(const TrilinearForm& t) {
    Scene s;
    CubicCase cc = classify_cubic(t);
    for (const auto& r : cc.vanishing_rays) s.rays.push_back({r, RayKind::CubicRoot, ""});
    for (const auto& r : hessian_root_rays(t)) s.rays.push_back({r, RayKind::HessianRoot, ""});
    auto comps = positive_index_components(t);
    for (std::size_t i = 0; i < comps.components.size(); ++i)
        s.cones.push_back({comps.components[i], "P" + std::to_string(i)});
    return s;
}

std::string render_svg(const Scene& scene) {
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize + 60
      << "\" viewBox=\"0 0 " << kSize << " " << kSize + 60 << "\">\n";
    o << "<defs><clipPath id=\"unit\"><circle cx=\"" << kCenter << "\" cy=\"" << kCenter << "\" r=\"" << kRadius
      << "\"/></clipPath></defs>\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    o << "<g clip-path=\"url(#unit)\">\n";
    for (const auto& c : scene.cones) {
        auto a = c.cone.lo().unit_direction();
        auto b = c.cone.hi().unit_direction();
        double t0 = std::atan2(a[1], a[0]);
        double t1 = std::atan2(b[1], b[0]);
        if (t1 < t0) t1 += 2 * M_PI;
        o << "<path fill=\"#2ca02c\" fill-opacity=\"0.2\" stroke=\"none\" d=\"M " << fmt(kCenter) << " "
          << fmt(kCenter);
        const int steps = 32;
        for (int i = 0; i <= steps; ++i) {
            double th = t0 + (t1 - t0) * i / steps;
            auto [x, y] = to_screen(std::cos(th), std::sin(th), kRadius);
            o << " L " << fmt(x) << " " << fmt(y);
        }
        o << " Z\"><title>" << xml_escape(c.label) << "</title></path>\n";
    }
    o << "</g>\n";
    o << "<circle cx=\"" << kCenter << "\" cy=\"" << kCenter << "\" r=\"" << kRadius
      << "\" fill=\"none\" stroke=\"#999999\"/>\n";
    o << "<line x1=\"" << kCenter - kRadius << "\" y1=\"" << kCenter << "\" x2=\"" << kCenter + kRadius << "\" y2=\""
      << kCenter << "\" stroke=\"#bbbbbb\"/>\n";
    o << "<line x1=\"" << kCenter << "\" y1=\"" << kCenter - kRadius << "\" x2=\"" << kCenter << "\" y2=\""
      << kCenter + kRadius << "\" stroke=\"#bbbbbb\"/>\n";
    for (const auto& r : scene.rays) {
        auto u = r.ray.unit_direction();
        auto [x, y] = to_screen(u[0], u[1], kRadius);
        o << "<line x1=\"" << fmt(kCenter) << "\" y1=\"" << fmt(kCenter) << "\" x2=\"" << fmt(x) << "\" y2=\"" << fmt(y)
          << "\" stroke=\"" << color_of(r.kind) << "\" stroke-width=\"2\"/>\n";
        if (!r.label.empty()) {
            auto [lx, ly] = to_screen(u[0], u[1], kRadius + 12);
            o << "<text x=\"" << fmt(lx) << "\" y=\"" << fmt(ly) << "\" font-size=\"11\" text-anchor=\"middle\">"
              << xml_escape(r.label) << "</text>\n";
        }
    }
    const RayKind kinds[] = {RayKind::CubicRoot, RayKind::HessianRoot, RayKind::PEdge,
                             RayKind::E,         RayKind::Delta,       RayKind::R};
    double lx = 10;
    for (RayKind k : kinds) {
        o << "<rect x=\"" << lx << "\" y=\"" << kSize + 20 << "\" width=\"10\" height=\"10\" fill=\"" << color_of(k)
          << "\"/>";
        o << "<text x=\"" << lx + 14 << "\" y=\"" << kSize + 29 << "\" font-size=\"10\">" << name_of(k) << "</text>\n";
        lx += 64;
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace cy3

#include "ipevo/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <ostream>

#include "ipevo/errors.hpp"
#include "ipevo/random.hpp"
#include "ipevo/scaffolding.hpp"

namespace ipevo {

namespace {

constexpr double kW = 800, kH = 500, kM = 40;

// fixed number formatting keeps the output byte-stable
std::string num(double x) {
    char b[32];
    std::snprintf(b, sizeof b, "%.2f", std::abs(x) < 5e-3 ? 0.0 : x);
    return b;
}

void header(std::ostream& os, double w, double h) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h)
       << "\" viewBox=\"0 0 " << num(w) << ' ' << num(h) << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void axes(std::ostream& os, double x0, double y0, double x1, double y1) {
    os << "<g stroke=\"black\" stroke-width=\"1\">"
       << "<line x1=\"" << num(x0) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x1) << "\" y2=\"" << num(y1) << "\"/>"
       << "<line x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(x0) << "\" y2=\"" << num(y1) << "\"/>"
       << "</g>\n";
}

void label(std::ostream& os, double x, double y, const std::string& s, const char* anchor = "start") {
    os << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\""
       << anchor << "\">" << s << "</text>\n";
}

std::string short_num(double x) {
    char b[32];
    std::snprintf(b, sizeof b, "%.3g", x);
    return b;
}

}  // namespace

RenderMode parse_render_mode(const std::string& s) {
    if (s == "scaffolding") return RenderMode::scaffolding;
    if (s == "skewer") return RenderMode::skewer;
    if (s == "massflow") return RenderMode::massflow;
    throw ValidationError("render mode must be scaffolding, skewer or massflow");
}

std::string block_color(double block_id) {
    static const char* palette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
                                    "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#1f77b4", "#8c564b"};
    std::uint64_t bits;
    std::memcpy(&bits, &block_id, sizeof bits);
    return palette[mix64(bits) % (sizeof palette / sizeof *palette)];
}

void render_scaffolding_svg(std::ostream& os, const SpindlePointProcess& N) {
    header(os, kW, kH);
    const double x0 = kM, x1 = kW - kM, y0 = kM, y1 = kH - kM;
    axes(os, x0, y0, x1, y1);
    if (N.points.empty() && !(N.length() > 0)) {
        os << "</svg>\n";
        return;
    }
    const Scaffolding X = xi(N);
    const double len = N.length() > 0 ? N.length() : 1.0;
    double lo = std::min(0.0, X.min_value()), hi = std::max(X.max_value(), lo + 1e-9);
    const double pad = 0.05 * (hi - lo);
    lo -= pad, hi += pad;
    auto px = [&](double t) { return x0 + (x1 - x0) * t / len; };
    auto py = [&](double v) { return y1 - (y1 - y0) * (v - lo) / (hi - lo); };

    double vmax = 0;
    for (const auto& pt : N.points)
        for (double v : pt.f.v) vmax = std::max(vmax, v);
    const double half = vmax > 0 ? 30.0 / vmax : 0.0;  // pixels per unit mass

    constexpr int kSamples = 24;
    os << "<g stroke=\"none\" fill-opacity=\"0.45\">\n";
    for (std::size_t i = 0; i < N.size(); ++i) {
        const auto& f = N.points[i].f;
        const double t = X.jump_time(i), base = X.before(i), z = f.lifetime();
        if (!(z > 0)) continue;
        std::string left, right;
        for (int k = 0; k <= kSamples; ++k) {
            const double u = z * k / kSamples;
            const double w = half * f.value(u);
            left += num(px(t) - w) + "," + num(py(base + u)) + " ";
            right = num(px(t) + w) + "," + num(py(base + u)) + " " + right;
        }
        os << "<polygon fill=\"" << block_color(N.points[i].t) << "\" points=\"" << left << right << "\"/>\n";
    }
    os << "</g>\n";

    std::string path = "M" + num(px(0)) + "," + num(py(X.start()));
    for (std::size_t i = 0; i < X.jumps(); ++i) {
        const double t = X.jump_time(i);
        path += " L" + num(px(t)) + "," + num(py(X.before(i))) + " L" + num(px(t)) + "," + num(py(X.after(i)));
    }
    path += " L" + num(px(len)) + "," + num(py(X.value(len)));
    os << "<path d=\"" << path << "\" fill=\"none\" stroke=\"black\" stroke-width=\"0.8\"/>\n";
    label(os, x0, y1 + 15, "0");
    label(os, x1, y1 + 15, short_num(len), "end");
    label(os, x0 - 4, py(0) + 4, "0", "end");
    os << "</svg>\n";
}

void render_levels_svg(std::ostream& os, const EvolutionPath& path, RenderMode mode) {
    if (mode == RenderMode::scaffolding) throw ValidationError("scaffolding mode needs a point process");
    const std::size_t n = path.snapshots.size();
    const double strip = n > 0 ? std::clamp(420.0 / double(n), 1.0, 20.0) : 1.0;
    const double h = 2 * kM + strip * double(std::max<std::size_t>(n, 1));
    header(os, kW, h);
    const double x0 = kM, x1 = kW - kM, y0 = kM, y1 = h - kM;
    axes(os, x0, y0, x1, y1);
    double mmax = 0;
    for (const auto& s : path.snapshots) mmax = std::max(mmax, s.partition.total_mass());
    if (n == 0 || !(mmax > 0)) {
        os << "</svg>\n";
        return;
    }
    const double scale = (x1 - x0 - 10) / mmax;
    const double centre = (x0 + 5 + x1 - 5) / 2;
    for (std::size_t k = 0; k < n; ++k) {
        const auto& s = path.snapshots[k];
        const double top = y0 + strip * double(k);
        double x = mode == RenderMode::skewer ? x0 + 5 : centre - s.partition.total_mass() * scale / 2;
        os << "<g>";
        const auto& blocks = s.partition.blocks();
        for (std::size_t j = 0; j < blocks.size(); ++j) {
            const double w = blocks[j].mass * scale;
            const double id = j < s.block_ids.size() ? s.block_ids[j] : double(j);
            os << "<rect x=\"" << num(x) << "\" y=\"" << num(top) << "\" width=\"" << num(w) << "\" height=\""
               << num(strip) << "\" fill=\"" << block_color(id) << "\"/>";
            x += w;
        }
        os << "</g>\n";
    }
    label(os, x0 - 4, y0 + strip, "y=" + short_num(path.snapshots.front().y), "end");
    label(os, x0 - 4, y1, "y=" + short_num(path.snapshots.back().y), "end");
    label(os, x1, y1 + 15, "mass " + short_num(mmax), "end");
    os << "</svg>\n";
}

}  // namespace ipevo

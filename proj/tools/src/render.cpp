#include "gaptile/cli/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace gaptile::cli {
namespace {

constexpr std::string_view kLabels = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";

char label(std::size_t i) { return kLabels[i % kLabels.size()]; }

std::string hsl_hex(double h, double s, double l) {
    const double c = (1.0 - std::abs(2.0 * l - 1.0)) * s;
    const double hp = h / 60.0;
    const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
    double r = 0, g = 0, b = 0;
    if (hp < 1) {
        r = c, g = x;
    } else if (hp < 2) {
        r = x, g = c;
    } else if (hp < 3) {
        g = c, b = x;
    } else if (hp < 4) {
        g = x, b = c;
    } else if (hp < 5) {
        r = x, b = c;
    } else {
        r = c, b = x;
    }
    const double m = l - c / 2.0;
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround((r + m) * 255)),
                  static_cast<int>(std::lround((g + m) * 255)), static_cast<int>(std::lround((b + m) * 255)));
    return buf;
}

// A cell grid with a path index per cell, -1 when empty.
struct Grid {
    Int width = 0;
    Int height = 0;
    std::vector<long> owner;
    bool cropped = false;
};

Grid grid_of(const std::vector<LatticePath>& paths, Int width, Int height, Int max_side) {
    Grid g;
    g.width = std::min(width, max_side);
    g.height = std::min(height, max_side);
    g.cropped = g.width < width || g.height < height;
    g.owner.assign(static_cast<std::size_t>(g.width * g.height), -1);
    for (std::size_t i = 0; i < paths.size(); ++i) {
        for (const auto& p : paths[i].points()) {
            if (p.x < 0 || p.y < 0 || p.x >= g.width || p.y >= g.height) continue;
            g.owner[static_cast<std::size_t>(p.y * g.width + p.x)] = static_cast<long>(i);
        }
    }
    return g;
}

std::string ascii_grid(const Grid& g, const std::string& title) {
    std::ostringstream os;
    os << title << '\n';
    for (Int y = g.height - 1; y >= 0; --y) {
        for (Int x = 0; x < g.width; ++x) {
            const long o = g.owner[static_cast<std::size_t>(y * g.width + x)];
            os << (o < 0 ? '.' : label(static_cast<std::size_t>(o)));
        }
        os << '\n';
    }
    if (g.cropped) os << "[truncated: showing " << g.width << "x" << g.height << "]\n";
    return os.str();
}

std::string svg_paths(const std::vector<LatticePath>& paths, const Grid& g, const RenderSpec& spec,
                      const std::string& title) {
    const int c = spec.cell;
    const int margin = c;
    const Int w = g.width * c + 2 * margin;
    const Int h = g.height * c + 2 * margin + (g.cropped ? c : 0);
    auto cx = [&](Int x) { return margin + x * c + c / 2; };
    auto cy = [&](Int y) { return margin + (g.height - 1 - y) * c + c / 2; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 "
       << w << ' ' << h << "\">\n";
    os << "<title>" << title << "</title>\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    for (Int y = 0; y < g.height; ++y) {
        for (Int x = 0; x < g.width; ++x) {
            const long o = g.owner[static_cast<std::size_t>(y * g.width + x)];
            const std::string fill = o < 0 ? "#f4f4f4" : palette_color(spec.seed, static_cast<std::size_t>(o));
            os << "<rect x=\"" << margin + x * c << "\" y=\"" << margin + (g.height - 1 - y) * c << "\" width=\"" << c
               << "\" height=\"" << c << "\" fill=\"" << fill << "\" fill-opacity=\"0.35\" stroke=\"#cccccc\"/>\n";
        }
    }
    for (std::size_t i = 0; i < paths.size(); ++i) {
        const auto color = palette_color(spec.seed, i);
        std::ostringstream pts;
        bool any = false;
        for (const auto& p : paths[i].points()) {
            if (p.x >= g.width || p.y >= g.height) continue;
            pts << (any ? " " : "") << cx(p.x) << ',' << cy(p.y);
            any = true;
        }
        if (!any) continue;
        os << "<polyline points=\"" << pts.str() << "\" fill=\"none\" stroke=\"" << color
           << "\" stroke-width=\"" << std::max(2, c / 8) << "\"/>\n";
        for (const auto& p : paths[i].points()) {
            if (p.x >= g.width || p.y >= g.height) continue;
            os << "<circle cx=\"" << cx(p.x) << "\" cy=\"" << cy(p.y) << "\" r=\"" << std::max(2, c / 6)
               << "\" fill=\"" << color << "\"/>\n";
        }
    }
    if (g.cropped) {
        os << "<text x=\"" << margin << "\" y=\"" << h - c / 3 << "\" font-family=\"monospace\" font-size=\""
           << std::max(8, c / 2) << "\">truncated: showing " << g.width << "x" << g.height << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string render_interval(const IntervalTiling& t, const RenderSpec& spec) {
    if (t.tiles.empty() || t.length <= 0) throw TilingError(ErrorKind::InvalidInput, "nothing to render: no tiles");
    const Int shown = std::min(t.length, spec.window);
    const bool truncated = shown < t.length;
    std::vector<long> owner(static_cast<std::size_t>(shown), -1);
    for (std::size_t i = 0; i < t.tiles.size(); ++i) {
        for (Int p : t.tiles[i].points()) {
            if (p >= 0 && p < shown) owner[static_cast<std::size_t>(p)] = static_cast<long>(i);
        }
    }
    std::ostringstream os;
    if (spec.target == RenderTarget::Ascii) {
        os << "interval N=" << t.length << " tiles=" << t.tiles.size() << '\n';
        for (long o : owner) os << (o < 0 ? '.' : label(static_cast<std::size_t>(o)));
        if (truncated) os << " ... [truncated: showing " << shown << " of " << t.length << " points]";
        os << '\n';
        return os.str();
    }
    const int c = spec.cell;
    const int margin = c;
    const int arc_room = 3 * c;
    const Int w = shown * c + 2 * margin + (truncated ? 4 * c : 0);
    const Int h = arc_room + c + 2 * margin;
    const Int base_y = margin + arc_room;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
       << ' ' << h << "\">\n";
    os << "<title>interval tiling of length " << t.length << "</title>\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    for (Int x = 0; x < shown; ++x) {
        const long o = owner[static_cast<std::size_t>(x)];
        const std::string fill = o < 0 ? "#f4f4f4" : palette_color(spec.seed, static_cast<std::size_t>(o));
        os << "<rect x=\"" << margin + x * c << "\" y=\"" << base_y << "\" width=\"" << c << "\" height=\"" << c
           << "\" fill=\"" << fill << "\" stroke=\"#ffffff\"/>\n";
    }
    for (std::size_t i = 0; i < t.tiles.size(); ++i) {
        const auto& pts = t.tiles[i].points();
        if (pts.front() >= shown) continue;
        const auto color = palette_color(spec.seed, i);
        for (std::size_t j = 1; j < pts.size() && pts[j] < shown; ++j) {
            const Int x1 = margin + pts[j - 1] * c + c / 2;
            const Int x2 = margin + pts[j] * c + c / 2;
            const Int lift = std::min<Int>(arc_room, (x2 - x1) / 2 + c / 2);
            os << "<path d=\"M " << x1 << ' ' << base_y << " Q " << (x1 + x2) / 2 << ' ' << base_y - lift << ' '
               << x2 << ' ' << base_y << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
        }
    }
    if (truncated) {
        os << "<text x=\"" << margin + shown * c + c / 2 << "\" y=\"" << base_y + c - c / 4
           << "\" font-family=\"monospace\" font-size=\"" << std::max(8, c / 2) << "\">... " << shown << " of "
           << t.length << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace

std::string palette_color(std::uint64_t seed, std::size_t index) {
    // mt19937_64 output is fixed by the standard, so colors are portable.
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + index);
    const auto v = rng();
    const double hue = static_cast<double>(v % 360);
    const double light = 0.40 + static_cast<double>((v >> 20) % 20) / 100.0;
    return hsl_hex(hue, 0.70, light);
}

std::string render(const TilingDocument& doc, const RenderSpec& spec) {
    if (const auto* t = std::get_if<IntervalTiling>(&doc)) return render_interval(*t, spec);
    const std::vector<LatticePath>* paths = nullptr;
    Int width = 0;
    Int height = 0;
    std::string title;
    if (const auto* r = std::get_if<RectangleTiling>(&doc)) {
        paths = &r->paths;
        width = r->width;
        height = r->height;
        title = "rectangle " + std::to_string(width) + "x" + std::to_string(height) + ", " +
                std::to_string(r->paths.size()) + " paths";
    } else {
        const auto& l = std::get<LiftedTiling>(doc);
        paths = &l.paths;
        width = l.support.empty() ? 0 : l.support.back() + 1;
        height = l.height;
        title = "lifted tiling over " + std::to_string(l.support.size()) + " columns, " +
                std::to_string(l.paths.size()) + " paths";
    }
    if (paths->empty() || width <= 0 || height <= 0) {
        throw TilingError(ErrorKind::InvalidInput, "nothing to render: no paths");
    }
    const auto g = grid_of(*paths, width, height, spec.max_side);
    if (spec.target == RenderTarget::Ascii) return ascii_grid(g, title);
    return svg_paths(*paths, g, spec, title);
}

}  // namespace gaptile::cli

#include "lodtex/panorama/segments.hpp"

#include "lodtex/core/random.hpp"
#include "lodtex/imageproc/filter.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace lodtex::panorama {

namespace {

struct Point {
    int x, y;
};

struct EdgeMap {
    std::vector<Point> pts;
    std::vector<float> sub_x, sub_y;  // sub-pixel position per pixel, w x h
};

EdgeMap edge_points(const GrayImage& img, double threshold) {
    const auto g = imageproc::sobel(img);
    const int w = img.width(), h = img.height();
    GrayImage mag(w, h, 1);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) mag.at(x, y) = std::hypot(g.gx.at(x, y), g.gy.at(x, y));
    EdgeMap e;
    e.sub_x.assign(static_cast<std::size_t>(w) * h, 0.0f);
    e.sub_y = e.sub_x;
    for (int y = 1; y + 1 < h; ++y)
        for (int x = 1; x + 1 < w; ++x) {
            const float m = mag.at(x, y);
            if (m < threshold) continue;
            // Keep maxima along the dominant gradient axis.
            const bool horiz = std::abs(g.gx.at(x, y)) >= std::abs(g.gy.at(x, y));
            const float m0 = horiz ? mag.at(x - 1, y) : mag.at(x, y - 1);
            const float m1 = horiz ? mag.at(x + 1, y) : mag.at(x, y + 1);
            if (!(m >= m0 && m > m1)) continue;
            e.pts.push_back({x, y});
            const double den = m0 - 2.0 * m + m1;
            const double off = den < 0 ? std::clamp(0.5 * (m0 - m1) / den, -0.5, 0.5) : 0.0;
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            e.sub_x[i] = static_cast<float>(x + (horiz ? off : 0.0));
            e.sub_y[i] = static_cast<float>(y + (horiz ? 0.0 : off));
        }
    return e;
}

// Total least squares line through the points; endpoints a and b are
// projected onto it.
Segment2 refine(const std::vector<Vec2>& pts, const Vec2& a, const Vec2& b) {
    if (pts.size() < 2) return {a, b};
    Vec2 c = Vec2::Zero();
    for (const auto& p : pts) c += p;
    c /= static_cast<double>(pts.size());
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto& p : pts) {
        const Vec2 d = p - c;
        sxx += d.x() * d.x();
        sxy += d.x() * d.y();
        syy += d.y() * d.y();
    }
    const double ang = 0.5 * std::atan2(2 * sxy, sxx - syy);
    const Vec2 dir(std::cos(ang), std::sin(ang));
    return {c + (a - c).dot(dir) * dir, c + (b - c).dot(dir) * dir};
}

}  // namespace

std::vector<Segment2> detect_segments(const GrayImage& img, const SegmentOptions& opt) {
    const int w = img.width(), h = img.height();
    const EdgeMap edges = edge_points(img, opt.gradient_threshold);
    std::vector<Point> pts = edges.pts;
    Rng rng(opt.seed);
    shuffle(std::span<Point>(pts), rng);

    // theta in [0, 180): line direction (-sin, cos) is vertical at theta = 0.
    std::vector<double> cs, sn;
    for (int k = 0; k < 180; ++k) {
        const double d = std::min(k, 180 - k);
        if (d > opt.max_angle_from_vertical_deg) continue;
        cs.push_back(std::cos(deg2rad(k)));
        sn.push_back(std::sin(deg2rad(k)));
    }
    const int nang = static_cast<int>(cs.size());
    const int offset = w + h;
    const int nrho = 2 * offset + 1;
    std::vector<int> acc(static_cast<std::size_t>(nang) * nrho, 0);
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(w) * h, 0), voted(mask.size(), 0);
    for (const auto& p : pts) mask[static_cast<std::size_t>(p.y) * w + p.x] = 1;
    const std::vector<std::uint8_t> is_edge = mask;
    std::vector<std::uint32_t> stamp(mask.size(), 0);
    std::uint32_t line_id = 0;
    auto rho = [&](int k, double x, double y) { return static_cast<int>(std::lround(x * cs[k] + y * sn[k])) + offset; };

    std::vector<Segment2> out;
    for (const auto& p : pts) {
        const std::size_t idx = static_cast<std::size_t>(p.y) * w + p.x;
        if (!mask[idx]) continue;
        int best = 0, best_k = -1;
        for (int k = 0; k < nang; ++k) {
            int& v = acc[static_cast<std::size_t>(k) * nrho + rho(k, p.x, p.y)];
            ++v;
            if (v > best) {
                best = v;
                best_k = k;
            }
        }
        voted[idx] = 1;
        if (best < opt.hough_threshold) continue;

        // Walk along the line in both directions, tolerating max_gap misses.
        double dx = -sn[best_k], dy = cs[best_k];
        const double s = 1.0 / std::max(std::abs(dx), std::abs(dy));
        dx *= s;
        dy *= s;
        std::array<Point, 2> end{p, p};
        std::array<int, 2> tend{0, 0};
        for (int dir = 0; dir < 2; ++dir) {
            const double sx = dir == 0 ? dx : -dx, sy = dir == 0 ? dy : -dy;
            int gap = 0;
            for (int t = 1;; ++t) {
                const int x = static_cast<int>(std::lround(p.x + t * sx));
                const int y = static_cast<int>(std::lround(p.y + t * sy));
                if (x < 0 || y < 0 || x >= w || y >= h) break;
                if (mask[static_cast<std::size_t>(y) * w + x]) {
                    gap = 0;
                    end[dir] = {x, y};
                    tend[dir] = t;
                } else if (++gap > opt.max_gap) {
                    break;
                }
            }
        }
        const bool good = std::max(std::abs(end[0].x - end[1].x), std::abs(end[0].y - end[1].y)) >= opt.min_length;

        // Consume the walked pixels; a good line also withdraws their votes.
        for (int dir = 0; dir < 2; ++dir) {
            const double sx = dir == 0 ? dx : -dx, sy = dir == 0 ? dy : -dy;
            for (int t = dir == 0 ? 0 : 1; t <= tend[dir]; ++t) {
                const int x = static_cast<int>(std::lround(p.x + t * sx));
                const int y = static_cast<int>(std::lround(p.y + t * sy));
                const std::size_t j = static_cast<std::size_t>(y) * w + x;
                if (mask[j]) {
                    if (good && voted[j])
                        for (int k = 0; k < nang; ++k) --acc[static_cast<std::size_t>(k) * nrho + rho(k, x, y)];
                    mask[j] = 0;
                }
            }
        }
        if (!good) continue;

        // Edge pixels within one pixel of the walked line drive the final fit.
        ++line_id;
        std::vector<Vec2> support;
        const double nx = cs[best_k], ny = sn[best_k];
        for (int t = -tend[1]; t <= tend[0]; ++t)
            for (int o = -1; o <= 1; ++o) {
                const int x = static_cast<int>(std::lround(p.x + t * dx + o * nx));
                const int y = static_cast<int>(std::lround(p.y + t * dy + o * ny));
                if (x < 0 || y < 0 || x >= w || y >= h) continue;
                const std::size_t j = static_cast<std::size_t>(y) * w + x;
                if (!is_edge[j] || stamp[j] == line_id) continue;
                stamp[j] = line_id;
                support.emplace_back(edges.sub_x[j], edges.sub_y[j]);
            }
        out.push_back(refine(support, Vec2(end[1].x, end[1].y), Vec2(end[0].x, end[0].y)));
    }
    return out;
}

std::vector<SphereSegment> to_sphere(const TileCamera& cam, const std::vector<Segment2>& segs) {
    std::vector<SphereSegment> out;
    out.reserve(segs.size());
    for (const auto& s : segs) out.push_back({cam.direction(s.a.x(), s.a.y()), cam.direction(s.b.x(), s.b.y())});
    return out;
}

}  // namespace lodtex::panorama

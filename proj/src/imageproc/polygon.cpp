#include "lodtex/imageproc/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lodtex::imageproc {

BinaryMask rasterize_polygon(std::span<const Vec2> poly, int width, int height, const Mat3& transform) {
    BinaryMask out(width, height);
    const std::size_t n = poly.size();
    if (n < 3) return out;
    std::vector<Vec2> p;
    p.reserve(n);
    for (const auto& q : poly) {
        const Vec3 h = transform * Vec3(q.x(), q.y(), 1.0);
        p.emplace_back(h.x() / h.z(), h.y() / h.z());
    }
    std::vector<double> xs;
    for (int y = 0; y < height; ++y) {
        const double yc = y + 0.5;
        xs.clear();
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2& a = p[i];
            const Vec2& b = p[(i + 1) % n];
            if ((a.y() <= yc) == (b.y() <= yc)) continue;
            xs.push_back(a.x() + (yc - a.y()) * (b.x() - a.x()) / (b.y() - a.y()));
        }
        std::sort(xs.begin(), xs.end());
        for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
            // Centres x + 0.5 in [xs[k], xs[k+1]).
            const int x0 = std::max(0, static_cast<int>(std::ceil(xs[k] - 0.5)));
            const int x1 = std::min(width - 1, static_cast<int>(std::ceil(xs[k + 1] - 0.5)) - 1);
            for (int x = x0; x <= x1; ++x) out.set(x, y);
        }
    }
    return out;
}

double polygon_iou(std::span<const Vec2> p, std::span<const Vec2> q, int resolution) {
    if (p.size() < 3 && q.size() < 3) return 0.0;
    Vec2 lo = Vec2::Constant(std::numeric_limits<double>::infinity()), hi = -lo;
    for (auto s : {p, q})
        for (const auto& v : s) {
            lo = lo.cwiseMin(v);
            hi = hi.cwiseMax(v);
        }
    const Vec2 ext = hi - lo;
    const double longest = std::max(ext.x(), ext.y());
    if (!(longest > 0)) return 0.0;
    const double cell = longest / resolution;
    const int w = std::max(1, static_cast<int>(std::ceil(ext.x() / cell - 1e-9)));
    const int h = std::max(1, static_cast<int>(std::ceil(ext.y() / cell - 1e-9)));
    Mat3 t;
    t << 1.0 / cell, 0, -lo.x() / cell, 0, 1.0 / cell, -lo.y() / cell, 0, 0, 1;
    const BinaryMask a = rasterize_polygon(p, w, h, t);
    const BinaryMask b = rasterize_polygon(q, w, h, t);
    std::size_t inter = 0, uni = 0;
    for (std::size_t i = 0; i < a.bits().size(); ++i) {
        const bool x = a.bits()[i], y = b.bits()[i];
        inter += (x && y);
        uni += (x || y);
    }
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

namespace {

void dp(std::span<const Vec2> pts, std::size_t i0, std::size_t i1, double tol, std::vector<char>& keep) {
    if (i1 <= i0 + 1) return;
    double best = -1.0;
    std::size_t idx = i0;
    for (std::size_t i = i0 + 1; i < i1; ++i) {
        const double d = point_segment_distance(pts[i], pts[i0], pts[i1]);
        if (d > best) {
            best = d;
            idx = i;
        }
    }
    if (best > tol) {
        keep[idx] = 1;
        dp(pts, i0, idx, tol, keep);
        dp(pts, idx, i1, tol, keep);
    }
}

}  // namespace

Ring2 simplify_closed(std::span<const Vec2> ring, double tolerance) {
    const std::size_t n = ring.size();
    if (n <= 3) return Ring2(ring.begin(), ring.end());
    // Split at vertex 0 and the vertex farthest from it.
    std::size_t far = 1;
    for (std::size_t i = 2; i < n; ++i)
        if ((ring[i] - ring[0]).squaredNorm() > (ring[far] - ring[0]).squaredNorm()) far = i;
    std::vector<Vec2> pts(ring.begin(), ring.end());
    pts.push_back(ring[0]);
    std::vector<char> keep(n + 1, 0);
    keep[0] = keep[far] = keep[n] = 1;
    dp(pts, 0, far, tolerance, keep);
    dp(pts, far, n, tolerance, keep);
    Ring2 out;
    for (std::size_t i = 0; i < n; ++i)
        if (keep[i]) out.push_back(ring[i]);
    return out;
}

}  // namespace lodtex::imageproc

#include "lodtex/fov/fov.hpp"

#include "lodtex/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>

namespace lodtex::fov {

double FovWindow::width() const {
    const double w = wrap360(right - left);
    return w == 0.0 ? 360.0 : w;
}

double bearing(const Vec2& from, const Vec2& to) {
    const Vec2 d = to - from;
    if (d.x() == 0.0 && d.y() == 0.0) throw ArgumentError("bearing between coincident points");
    return wrap360(rad2deg(std::atan2(d.x(), d.y())));
}

std::vector<Vec2> sample_boundary(std::span<const Vec2> ring, double spacing) {
    if (!(spacing > 0)) throw ArgumentError("boundary sample spacing must be positive");
    std::vector<Vec2> out;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = ring[i];
        const Vec2& b = ring[(i + 1) % n];
        const int steps = std::max(1, static_cast<int>(std::ceil((b - a).norm() / spacing)));
        for (int k = 0; k < steps; ++k) {
            const double t = static_cast<double>(k) / steps;
            out.emplace_back(std::lerp(a.x(), b.x(), t), std::lerp(a.y(), b.y(), t));
        }
    }
    return out;
}

namespace {

bool blocked(const Vec2& cam, const Vec2& p, std::span<const geo::Footprint2D> neighbors) {
    for (const auto& nb : neighbors) {
        const auto& r = nb.ring;
        for (std::size_t i = 0; i < r.size(); ++i)
            if (segments_intersect(cam, p, r[i], r[(i + 1) % r.size()])) return true;
    }
    return false;
}

}  // namespace

FovWindow effective_fov(const Vec2& camera_xy, const geo::Footprint2D& target,
                        std::span<const geo::Footprint2D> neighbors, const FovOptions& opt) {
    if (target.ring.size() < 3) throw DegenerateGeometryError("footprint " + target.building_id + " has < 3 vertices");
    if (point_in_polygon(camera_xy, target.ring))
        throw ArgumentError("camera lies inside footprint " + target.building_id);

    const double ref = bearing(camera_xy, polygon_centroid(target.ring));
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    Vec2 sum = Vec2::Zero();
    std::size_t visible = 0;
    for (const auto& p : sample_boundary(target.ring, opt.sample_spacing_m)) {
        if (p == camera_xy || blocked(camera_xy, p, neighbors)) continue;
        const double d = wrap180(bearing(camera_xy, p) - ref);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
        sum += p;
        ++visible;
    }
    if (visible == 0) throw FullyOccludedError("building " + target.building_id + " is fully occluded");

    FovWindow w;
    w.left = wrap360(ref + lo);
    w.right = wrap360(ref + hi);
    const double dist = (sum / static_cast<double>(visible) - camera_xy).norm();
    w.optimal_pitch = rad2deg(std::atan2(opt.wall_height_m / 2.0 - opt.camera_height_m, dist));
    return w;
}

std::vector<double> sample_horizontal_angles(const FovWindow& w, int n) {
    if (n < 2) throw ArgumentError("need at least 2 horizontal samples");
    const double width = w.width();
    const double a = w.left + width / 20.0;
    const double b = w.left + width - width / 20.0;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.push_back(std::lerp(a, b, static_cast<double>(i) / (n - 1)));
    return out;
}

std::vector<double> sample_pitches(double optimal_pitch, int k, double range_deg) {
    if (k < 1) throw ArgumentError("need at least 1 pitch sample");
    if (k == 1) return {optimal_pitch};
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        out.push_back(std::lerp(optimal_pitch - range_deg, optimal_pitch + range_deg, static_cast<double>(i) / (k - 1)));
    return out;
}

void write_fov_csv(std::ostream& out, std::span<const FovRecord> rows) {
    out << "building_id,pano_id,left_deg,right_deg,pitch_deg\n";
    out << std::fixed << std::setprecision(6);
    for (const auto& r : rows)
        out << r.building_id << ',' << r.pano_id << ',' << r.window.left << ',' << r.window.right << ','
            << r.window.optimal_pitch << '\n';
}

}  // namespace lodtex::fov

#include "lodtex/geo/sampling.hpp"

#include "lodtex/core/error.hpp"

#include <cmath>
#include <iomanip>

namespace lodtex::geo {

std::vector<GeodeticPoint> generate_sampling_points(const GeodeticPoint& start, const GeodeticPoint& end,
                                                    int n) {
    if (n < 2) throw ArgumentError("sampling needs at least 2 points, got " + std::to_string(n));
    std::vector<GeodeticPoint> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n - 1);
        pts.push_back({std::lerp(start.lat, end.lat, t), std::lerp(start.lon, end.lon, t)});
    }
    return pts;
}

void write_sampling_csv(std::ostream& out, std::span<const GeodeticPoint> points) {
    out << "point_id,lat,lon\n";
    out << std::setprecision(12) << std::fixed;
    for (std::size_t i = 0; i < points.size(); ++i) out << i << ',' << points[i].lat << ',' << points[i].lon << '\n';
}

double footprint_distance_m(const GeodeticPoint& p, const Footprint2D& f) {
    Ring2 local;
    local.reserve(f.ring.size());
    if (f.crs.is_geodetic()) {
        const Vec2 scale = metres_per_degree(p.lat);
        for (const auto& q : f.ring)
            local.emplace_back(wrap180(q.x() - p.lon) * scale.x(), (q.y() - p.lat) * scale.y());
    } else {
        const UtmPoint u = geodetic_to_utm(p, f.crs.zone);
        for (const auto& q : f.ring) local.emplace_back(q.x() - u.easting, q.y() - u.northing);
    }
    return point_polygon_distance(Vec2::Zero(), local);
}

std::vector<std::string> buffer_filter(const GeodeticPoint& p, double radius_m,
                                       std::span<const Footprint2D> footprints) {
    if (!(radius_m > 0)) throw ArgumentError("buffer radius must be positive");
    std::vector<std::string> ids;
    for (const auto& f : footprints)
        if (footprint_distance_m(p, f) <= radius_m) ids.push_back(f.building_id);
    return ids;
}

}  // namespace lodtex::geo

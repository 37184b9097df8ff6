#include "lodtex/geo/geojson.hpp"

#include "lodtex/core/error.hpp"
#include "lodtex/geo/utm.hpp"

#include <algorithm>

namespace lodtex::geo {

Footprint2D footprint_to_geodetic(const Footprint2D& f) {
    if (f.crs.is_geodetic()) return f;
    Footprint2D out;
    out.building_id = f.building_id;
    out.crs = Crs::geodetic();
    for (const auto& p : f.ring) {
        const auto g = utm_to_geodetic({p.x(), p.y(), f.crs.zone, f.crs.north});
        out.ring.emplace_back(g.lon, g.lat);
    }
    return out;
}

nlohmann::json to_geojson(std::span<const Footprint2D> footprints) {
    nlohmann::json features = nlohmann::json::array();
    for (const auto& f : footprints) {
        if (!f.crs.is_geodetic())
            throw CrsError("footprint " + f.building_id + " is in " + f.crs.name() + ", expected EPSG:4326");
        Ring2 ring = f.ring;
        if (signed_area(ring) < 0) std::reverse(ring.begin(), ring.end());
        nlohmann::json coords = nlohmann::json::array();
        for (const auto& p : ring) coords.push_back({p.x(), p.y()});
        if (!ring.empty()) coords.push_back({ring.front().x(), ring.front().y()});
        features.push_back({
            {"type", "Feature"},
            {"properties", {{"building_id", f.building_id}}},
            {"geometry", {{"type", "Polygon"}, {"coordinates", nlohmann::json::array({coords})}}},
        });
    }
    return {{"type", "FeatureCollection"}, {"features", features}};
}

std::string dump_geojson(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

}  // namespace lodtex::geo

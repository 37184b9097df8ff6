#pragma once

#include "lodtex/geo/citygml.hpp"

#include <nlohmann/json.hpp>

#include <span>
#include <string>

namespace lodtex::geo {

/// Converts a projected footprint into EPSG:4326 (lon/lat degrees). A
/// geodetic input is returned unchanged.
Footprint2D footprint_to_geodetic(const Footprint2D& f);

/// RFC 7946 FeatureCollection. Rings are closed and wound counter-clockwise;
/// coordinates are [lon, lat]. Throws CrsError for non-geodetic input.
nlohmann::json to_geojson(std::span<const Footprint2D> footprints);

std::string dump_geojson(const nlohmann::json& doc);

}  // namespace lodtex::geo

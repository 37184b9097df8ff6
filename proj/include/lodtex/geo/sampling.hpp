#pragma once

#include "lodtex/geo/citygml.hpp"
#include "lodtex/geo/utm.hpp"

#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace lodtex::geo {

/// n points linearly interpolated in lat/lon, both endpoints included.
std::vector<GeodeticPoint> generate_sampling_points(const GeodeticPoint& start, const GeodeticPoint& end,
                                                    int n);

/// Writes `point_id,lat,lon` rows.
void write_sampling_csv(std::ostream& out, std::span<const GeodeticPoint> points);

/// Minimum distance in metres from p to the footprint region (0 inside). For
/// geodetic footprints distances are taken in a local equirectangular frame
/// at p's latitude; projected footprints use p converted to their zone.
double footprint_distance_m(const GeodeticPoint& p, const Footprint2D& f);

/// Ids of footprints within radius_m of p.
std::vector<std::string> buffer_filter(const GeodeticPoint& p, double radius_m,
                                       std::span<const Footprint2D> footprints);

}  // namespace lodtex::geo

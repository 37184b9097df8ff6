#pragma once

#include "lodtex/core/geometry.hpp"

namespace lodtex::geo {

struct GeodeticPoint {
    double lat = 0.0;  // degrees
    double lon = 0.0;  // degrees
};

struct UtmPoint {
    double easting = 0.0;   // metres
    double northing = 0.0;  // metres
    int zone = 32;
    bool north = true;
};

/// GRS80 ellipsoid constants.
struct Ellipsoid {
    double a = 6378137.0;
    double f = 1.0 / 298.257222101;
};

inline constexpr double kUtmScale = 0.9996;
inline constexpr double kUtmFalseEasting = 500000.0;
inline constexpr double kUtmFalseNorthingSouth = 10000000.0;
/// Latitude bound beyond which the series is not used.
inline constexpr double kUtmMaxLatitude = 84.0;

double central_meridian(int zone);

/// Transverse Mercator via Krueger's series to sixth order in the third
/// flattening n. Sub-millimetre within a UTM zone.
UtmPoint geodetic_to_utm(const GeodeticPoint& g, int zone, const Ellipsoid& e = {});
GeodeticPoint utm_to_geodetic(const UtmPoint& p, const Ellipsoid& e = {});

/// Metres per degree of latitude and longitude at the given latitude
/// (meridional and prime-vertical radii of curvature).
Vec2 metres_per_degree(double lat_deg, const Ellipsoid& e = {});

}  // namespace lodtex::geo

#pragma once

#include <string>
#include <string_view>

namespace lodtex::geo {

/// Coordinate reference system tag. Only UTM (GRS80/WGS84 datum treated as
/// identical at the sub-metre level) and geographic lat/lon are modelled.
struct Crs {
    enum class Kind { Projected, Geodetic };
    Kind kind = Kind::Projected;
    int zone = 32;
    bool north = true;
    int epsg = 25832;

    static Crs utm(int zone, bool north = true);
    static Crs geodetic();
    /// Accepts "EPSG:25832", "urn:ogc:def:crs:EPSG::25832", compound
    /// "EPSG:25832+7837", "EPSG::326xx", "EPSG:4326" and similar variants.
    static Crs from_srs_name(std::string_view srs);

    bool is_geodetic() const noexcept { return kind == Kind::Geodetic; }
    std::string name() const;
    friend bool operator==(const Crs&, const Crs&) = default;
};

}  // namespace lodtex::geo

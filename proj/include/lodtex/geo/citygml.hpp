#pragma once

#include "lodtex/core/geometry.hpp"
#include "lodtex/geo/crs.hpp"

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace lodtex::geo {

enum class SurfaceClass { WallSurface, GroundSurface, RoofSurface, OpeningWindow, OpeningDoor, Other };

std::string_view to_string(SurfaceClass c);
inline bool is_opening(SurfaceClass c) {
    return c == SurfaceClass::OpeningWindow || c == SurfaceClass::OpeningDoor;
}

/// One gml:Polygon exterior ring as read from the document.
struct Polygon {
    std::string gml_id;
    std::vector<std::size_t> ring;  // indices into BRepBuilding::vertices, no closing duplicate
    std::size_t surface = 0;        // index into BRepBuilding::surfaces
};

/// One semantic boundary element (bldg:WallSurface, bldg:Window, ...).
struct SemanticSurface {
    SurfaceClass cls = SurfaceClass::Other;
    std::string gml_id;
    std::vector<std::size_t> polygons;  // indices into BRepBuilding::polygons, document order
    /// For openings: index of the enclosing semantic surface, otherwise -1.
    std::ptrdiff_t parent = -1;
};

using Triangle = std::array<std::size_t, 3>;

struct BRepBuilding {
    std::string id;
    std::vector<Vec3> vertices;
    std::vector<Triangle> faces;
    std::vector<SurfaceClass> face_class;
    std::vector<std::size_t> face_polygon;  // source polygon of each face
    std::vector<Polygon> polygons;
    std::vector<SemanticSurface> surfaces;
    Crs crs;

    double min_z() const;
    double max_z() const;
    double height() const { return vertices.empty() ? 0.0 : max_z() - min_z(); }

    /// Indices into `surfaces` of every WallSurface, in document order.
    std::vector<std::size_t> wall_surfaces() const;
    /// Opening surfaces whose parent is `surface_index`.
    std::vector<std::size_t> openings_of(std::size_t surface_index) const;
    std::vector<Vec3> polygon_points(std::size_t polygon_index) const;
};

struct ParseWarning {
    std::string kind;  // e.g. "empty-building", "unsupported-element", "interior-ring"
    std::string message;
};

struct CityModel {
    std::vector<BRepBuilding> buildings;
    std::vector<ParseWarning> warnings;
    /// Occurrences per warning kind.
    std::map<std::string, std::size_t> warning_counts() const;
};

/// Reads the supported CityGML subset: bldg:Building (including nested
/// BuildingPart), Wall/Ground/RoofSurface, Window, Door and gml:posList rings.
/// Polygons with more than three vertices are fan-triangulated when convex
/// and ear-clipped otherwise.
CityModel parse_citygml(std::string_view document);
CityModel parse_citygml_file(const std::filesystem::path& path);

/// Triangulates a planar ring given in 3D. Returns index triples into `ring`.
std::vector<Triangle> triangulate_polygon(const std::vector<Vec3>& ring);

struct Footprint2D {
    std::string building_id;
    Ring2 ring;  // first != last; closure implied
    Crs crs;
};

/// (x, y) of the first GroundSurface polygon in document order.
Footprint2D extract_footprint(const BRepBuilding& b);

/// Throws GeometryError when the ring has fewer than three vertices or
/// self-intersects.
void validate_footprint(const Footprint2D& f);

}  // namespace lodtex::geo

#pragma once

#include "lodtex/core/geometry.hpp"
#include "lodtex/geo/citygml.hpp"

#include <optional>
#include <span>
#include <vector>

namespace lodtex::brep {

using geo::SurfaceClass;
using geo::Triangle;

/// Triangle soup with per-face semantics.
struct Mesh {
    std::vector<Vec3> vertices;
    std::vector<Triangle> faces;
    std::vector<SurfaceClass> face_class;

    std::size_t size() const noexcept { return faces.size(); }
    std::array<Vec3, 3> triangle(std::size_t f) const {
        return {vertices[faces[f][0]], vertices[faces[f][1]], vertices[faces[f][2]]};
    }
    /// Right-hand-rule unit normal; zero for degenerate faces.
    Vec3 face_normal(std::size_t f) const;
    Vec3 face_centroid(std::size_t f) const;
    double face_area(std::size_t f) const;
};

Mesh mesh_from_building(const geo::BRepBuilding& b);
/// Concatenates meshes (e.g. target building plus its neighbours for occlusion).
Mesh merge_meshes(std::span<const Mesh> meshes);

struct RayHit {
    std::size_t face_index = 0;
    double t = 0.0;
    Vec3 point = Vec3::Zero();
};

inline constexpr double kRayEpsilon = 1e-9;

/// Moeller-Trumbore test; edges count as hits. Requires |dir| = 1.
std::optional<RayHit> ray_triangle_intersect(const Vec3& origin, const Vec3& dir, const Vec3& a, const Vec3& b,
                                             const Vec3& c, std::size_t face_index = 0);

/// Nearest hit over all faces, after an axis-aligned bounding box rejection.
std::optional<RayHit> cast_ray(const Mesh& mesh, const Vec3& origin, const Vec3& dir);

}  // namespace lodtex::brep

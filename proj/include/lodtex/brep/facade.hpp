#pragma once

#include "lodtex/brep/camera.hpp"
#include "lodtex/brep/mesh.hpp"
#include "lodtex/brep/plane.hpp"

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace lodtex::brep {

/// Planar rectangle q[0]..q[3] = q1..q4, counter-clockwise seen from +n:
/// q1 bottom-left, q2 bottom-right, q3 top-right, q4 top-left.
struct Quad3D {
    std::array<Vec3, 4> q;

    double width() const { return (q[1] - q[0]).norm(); }
    double height() const { return (q[3] - q[0]).norm(); }
    Vec3 center() const { return (q[0] + q[1] + q[2] + q[3]) / 4.0; }
    /// (q1, q2, q3) and (q1, q3, q4).
    std::array<std::array<Vec3, 3>, 2> triangles() const { return {{{q[0], q[1], q[2]}, {q[0], q[2], q[3]}}}; }
};

struct SimplifiedFacade {
    Quad3D quad;
    /// Frame with u along q2 - q1 and v along q4 - q1.
    PlaneFrame frame;
};

struct SimplifyOptions {
    double max_normal_spread_deg = 10.0;
    std::optional<Vec3> camera;
};

/// PCA plane, minimum-area rectangle of the projected points, corners
/// reordered to start bottom-left.
SimplifiedFacade fit_facade_rectangle(std::span<const Vec3> points, std::optional<Vec3> camera = std::nullopt);
SimplifiedFacade rectangle_in_frame(std::span<const Vec3> points, const PlaneFrame& pca);

SimplifiedFacade simplify_facade(const Mesh& mesh, std::span<const std::size_t> faces,
                                 const SimplifyOptions& opt = {});

/// Faces connected to the most-hit face and coplanar with it (normal within
/// angle_tol_deg, vertices within offset_tol_m of its plane). Sorted.
std::vector<std::size_t> collect_facade_faces(const Mesh& mesh, std::span<const RayHit> hits,
                                              double angle_tol_deg = 10.0, double offset_tol_m = 0.1);

struct RayBudget {
    int horizontal = 10;
    int vertical = 5;
    double pitch_range_deg = 5.0;
};

struct ViewSelection {
    std::size_t index = 0;
    std::vector<RayHit> hits;
    double score = 0.0;
};

/// Rays per candidate cover [heading - fov/2, heading + fov/2] shrunk by
/// fov/20, and pose.pitch +- pitch_range. A hit is valid when the nearest
/// face is a wall or opening (any face if the mesh carries no wall semantics).
ViewSelection select_best_view(const Mesh& mesh, std::span<const CameraPose> candidates,
                               const RayBudget& budget = {}, double lambda = 1.0);

}  // namespace lodtex::brep

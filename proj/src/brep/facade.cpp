#include "lodtex/brep/facade.hpp"

#include "lodtex/core/error.hpp"
#include "lodtex/fov/fov.hpp"
#include "lodtex/texturing/rays.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace lodtex::brep {

SimplifiedFacade fit_facade_rectangle(std::span<const Vec3> pts, std::optional<Vec3> camera) {
    return rectangle_in_frame(pts, fit_plane_pca(pts, camera));
}

SimplifiedFacade rectangle_in_frame(std::span<const Vec3> pts, const PlaneFrame& pca) {
    std::vector<Vec2> xy;
    xy.reserve(pts.size());
    for (const auto& p : pts) xy.push_back(project_to_plane(p, pca));
    const Rect2 rect = min_area_rect(xy);
    std::array<Vec3, 4> c;
    for (int i = 0; i < 4; ++i) c[i] = unproject(rect.corners[i], pca);

    // Start at the corner whose edge to its predecessor rises the most.
    int start = 0;
    double best = -1e300;
    for (int i = 0; i < 4; ++i) {
        const double rise = (c[(i + 3) % 4] - c[i]).z();
        if (rise > best + 1e-12) {
            best = rise;
            start = i;
        }
    }
    SimplifiedFacade out;
    for (int i = 0; i < 4; ++i) out.quad.q[i] = c[(start + i) % 4];

    out.frame.centroid = pca.centroid;
    out.frame.n = pca.n;
    out.frame.u = (out.quad.q[1] - out.quad.q[0]).normalized();
    out.frame.v = out.frame.n.cross(out.frame.u).normalized();
    if (!out.frame.u.allFinite()) throw DegenerateGeometryError("facade rectangle has zero width");
    return out;
}

SimplifiedFacade simplify_facade(const Mesh& mesh, std::span<const std::size_t> faces, const SimplifyOptions& opt) {
    if (faces.empty()) throw DegenerateGeometryError("no faces to simplify");
    std::set<std::size_t> vids;
    for (auto f : faces) {
        if (f >= mesh.size()) throw ArgumentError("face index out of range");
        for (auto v : mesh.faces[f]) vids.insert(v);
    }
    std::vector<Vec3> pts;
    pts.reserve(vids.size());
    for (auto v : vids) pts.push_back(mesh.vertices[v]);

    const PlaneFrame pca = fit_plane_pca(pts, opt.camera);
    const double cos_max = std::cos(deg2rad(opt.max_normal_spread_deg));
    for (auto f : faces) {
        const Vec3 fn = mesh.face_normal(f);
        if (fn.isZero()) continue;
        if (std::abs(fn.dot(pca.n)) < cos_max)
            throw NonPlanarFacadeError("face normals spread beyond " + std::to_string(opt.max_normal_spread_deg) +
                                       " degrees");
    }
    return rectangle_in_frame(pts, pca);
}

std::vector<std::size_t> collect_facade_faces(const Mesh& mesh, std::span<const RayHit> hits, double angle_tol_deg,
                                              double offset_tol_m) {
    if (hits.empty()) return {};
    std::map<std::size_t, int> counts;
    for (const auto& h : hits) ++counts[h.face_index];
    std::size_t seed = counts.begin()->first;
    for (const auto& [f, n] : counts)
        if (n > counts[seed]) seed = f;

    const Vec3 n0 = mesh.face_normal(seed);
    const Vec3 c0 = mesh.face_centroid(seed);
    const double cos_tol = std::cos(deg2rad(angle_tol_deg));
    auto coplanar = [&](std::size_t f) {
        const Vec3 fn = mesh.face_normal(f);
        if (fn.isZero() || fn.dot(n0) < cos_tol) return false;
        for (auto v : mesh.faces[f])
            if (std::abs((mesh.vertices[v] - c0).dot(n0)) > offset_tol_m) return false;
        return true;
    };

    std::vector<std::vector<std::size_t>> by_vertex(mesh.vertices.size());
    for (std::size_t f = 0; f < mesh.size(); ++f)
        for (auto v : mesh.faces[f]) by_vertex[v].push_back(f);

    std::vector<char> seen(mesh.size(), 0);
    std::vector<std::size_t> stack{seed}, out;
    seen[seed] = 1;
    while (!stack.empty()) {
        const std::size_t f = stack.back();
        stack.pop_back();
        out.push_back(f);
        for (auto v : mesh.faces[f])
            for (auto g : by_vertex[v])
                if (!seen[g] && coplanar(g)) {
                    seen[g] = 1;
                    stack.push_back(g);
                }
    }
    std::sort(out.begin(), out.end());
    return out;
}

ViewSelection select_best_view(const Mesh& mesh, std::span<const CameraPose> candidates, const RayBudget& budget,
                               double lambda) {
    if (candidates.empty()) throw ArgumentError("select_best_view needs at least one candidate pose");
    const bool any_wall = std::any_of(mesh.face_class.begin(), mesh.face_class.end(),
                                      [](SurfaceClass c) { return c == SurfaceClass::WallSurface; });

    std::optional<ViewSelection> best;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const CameraPose& pose = candidates[i];
        validate_pose(pose);
        const fov::FovWindow w{wrap360(pose.heading - pose.fov / 2), wrap360(pose.heading + pose.fov / 2), pose.pitch};
        std::vector<double> rel;
        for (double a : fov::sample_horizontal_angles(w, budget.horizontal)) rel.push_back(wrap180(a - pose.heading));
        const auto pitches = fov::sample_pitches(pose.pitch, budget.vertical, budget.pitch_range_deg);

        ViewSelection sel;
        sel.index = i;
        Vec2 sum = Vec2::Zero();
        for (const auto& r : texturing::camera_rays(pose, rel, pitches)) {
            auto hit = cast_ray(mesh, r.origin, r.dir);
            if (!hit) continue;
            const SurfaceClass cls = mesh.face_class[hit->face_index];
            if (any_wall && cls != SurfaceClass::WallSurface && !geo::is_opening(cls)) continue;
            sum += hit->point.head<2>();
            sel.hits.push_back(*hit);
        }
        if (sel.hits.empty()) continue;
        const Vec2 centroid = sum / static_cast<double>(sel.hits.size());
        sel.score = static_cast<double>(sel.hits.size()) - lambda * (centroid - pose.position.head<2>()).norm();
        if (!best || sel.score > best->score) best = std::move(sel);
    }
    if (!best) throw NoVisibleFacadeError("no candidate view hits a facade");
    return *best;
}

}  // namespace lodtex::brep

#include "lodtex/brep/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lodtex::brep {

Vec3 Mesh::face_normal(std::size_t f) const {
    const auto [a, b, c] = triangle(f);
    const Vec3 n = (b - a).cross(c - a);
    const double len = n.norm();
    return len > 0 ? Vec3(n / len) : Vec3::Zero();
}

Vec3 Mesh::face_centroid(std::size_t f) const {
    const auto [a, b, c] = triangle(f);
    return (a + b + c) / 3.0;
}

double Mesh::face_area(std::size_t f) const {
    const auto [a, b, c] = triangle(f);
    return 0.5 * (b - a).cross(c - a).norm();
}

Mesh mesh_from_building(const geo::BRepBuilding& b) {
    return Mesh{b.vertices, b.faces, b.face_class};
}

Mesh merge_meshes(std::span<const Mesh> meshes) {
    Mesh out;
    for (const auto& m : meshes) {
        const std::size_t base = out.vertices.size();
        out.vertices.insert(out.vertices.end(), m.vertices.begin(), m.vertices.end());
        for (const auto& f : m.faces) out.faces.push_back({f[0] + base, f[1] + base, f[2] + base});
        out.face_class.insert(out.face_class.end(), m.face_class.begin(), m.face_class.end());
    }
    return out;
}

std::optional<RayHit> ray_triangle_intersect(const Vec3& origin, const Vec3& dir, const Vec3& a, const Vec3& b,
                                             const Vec3& c, std::size_t face_index) {
    const Vec3 e1 = b - a;
    const Vec3 e2 = c - a;
    const Vec3 p = dir.cross(e2);
    const double det = e1.dot(p);
    const double scale = e1.norm() * e2.norm();
    if (std::abs(det) <= 1e-12 * scale) return std::nullopt;
    const double inv = 1.0 / det;
    const Vec3 s = origin - a;
    const double u = s.dot(p) * inv;
    if (u < 0.0 || u > 1.0) return std::nullopt;
    const Vec3 q = s.cross(e1);
    const double v = dir.dot(q) * inv;
    if (v < 0.0 || u + v > 1.0) return std::nullopt;
    const double t = e2.dot(q) * inv;
    if (t <= kRayEpsilon) return std::nullopt;
    return RayHit{face_index, t, origin + t * dir};
}

namespace {

bool ray_hits_box(const Vec3& o, const Vec3& d, const Vec3& lo, const Vec3& hi) {
    double tmin = 0.0, tmax = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 3; ++k) {
        if (std::abs(d[k]) < 1e-300) {
            if (o[k] < lo[k] || o[k] > hi[k]) return false;
            continue;
        }
        double t0 = (lo[k] - o[k]) / d[k];
        double t1 = (hi[k] - o[k]) / d[k];
        if (t0 > t1) std::swap(t0, t1);
        tmin = std::max(tmin, t0);
        tmax = std::min(tmax, t1);
        if (tmin > tmax) return false;
    }
    return true;
}

}  // namespace

std::optional<RayHit> cast_ray(const Mesh& mesh, const Vec3& origin, const Vec3& dir) {
    if (mesh.vertices.empty()) return std::nullopt;
    Vec3 lo = mesh.vertices.front(), hi = mesh.vertices.front();
    for (const auto& v : mesh.vertices) {
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
    }
    const Vec3 pad = Vec3::Constant(1e-6);
    if (!ray_hits_box(origin, dir, lo - pad, hi + pad)) return std::nullopt;

    std::optional<RayHit> best;
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        const auto [a, b, c] = mesh.triangle(f);
        auto hit = ray_triangle_intersect(origin, dir, a, b, c, f);
        if (hit && (!best || hit->t < best->t)) best = hit;
    }
    return best;
}

}  // namespace lodtex::brep

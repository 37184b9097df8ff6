#include "lodtex/brep/plane.hpp"

#include "lodtex/core/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

namespace lodtex::brep {

namespace {

// Makes the first clearly non-zero component positive so PCA axes are reproducible.
Vec3 canonical_sign(const Vec3& a) {
    for (int k = 0; k < 3; ++k) {
        if (std::abs(a[k]) > 1e-12) return a[k] < 0 ? Vec3(-a) : a;
    }
    return a;
}

}  // namespace

PlaneFrame fit_plane_pca(std::span<const Vec3> points, std::optional<Vec3> camera_hint) {
    if (points.size() < 3) throw DegenerateGeometryError("plane fit needs at least 3 points");
    Vec3 c = Vec3::Zero();
    for (const auto& p : points) c += p;
    c /= static_cast<double>(points.size());

    Mat3 cov = Mat3::Zero();
    for (const auto& p : points) {
        const Vec3 d = p - c;
        cov += d * d.transpose();
    }
    cov /= static_cast<double>(points.size());

    Eigen::SelfAdjointEigenSolver<Mat3> es(cov);
    const Vec3 ev = es.eigenvalues();
    if (!(ev[2] > 0) || ev[1] <= 1e-12 * ev[2]) throw DegenerateGeometryError("point set has rank < 2");

    PlaneFrame f;
    f.centroid = c;
    f.u = canonical_sign(es.eigenvectors().col(2).normalized());
    f.n = es.eigenvectors().col(0).normalized();
    double side = 0.0;
    if (camera_hint) side = f.n.dot(*camera_hint - c);
    if (side == 0.0) side = f.n.y();
    if (std::abs(side) < 1e-12) side = f.n.x();
    if (std::abs(side) < 1e-12) side = f.n.z();
    if (side < 0) f.n = -f.n;
    f.v = f.n.cross(f.u).normalized();
    return f;
}

Vec2 project_to_plane(const Vec3& p, const PlaneFrame& f) {
    const Vec3 d = p - f.centroid;
    return {d.dot(f.u), d.dot(f.v)};
}

Vec3 unproject(const Vec2& xy, const PlaneFrame& f) { return f.centroid + xy.x() * f.u + xy.y() * f.v; }

Rect2 min_area_rect(std::span<const Vec2> points) {
    if (points.empty()) throw DegenerateGeometryError("min_area_rect of an empty point set");
    const Ring2 hull = convex_hull(points);
    if (hull.size() < 2) throw DegenerateGeometryError("all points coincide");

    Rect2 best;
    best.area = std::numeric_limits<double>::infinity();
    const std::size_t m = hull.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Vec2 e = (hull[(i + 1) % m] - hull[i]).normalized();
        const Vec2 nrm(-e.y(), e.x());
        double s0 = std::numeric_limits<double>::infinity(), s1 = -s0, t0 = s0, t1 = -s0;
        for (const auto& p : hull) {
            const double s = p.dot(e), t = p.dot(nrm);
            s0 = std::min(s0, s);
            s1 = std::max(s1, s);
            t0 = std::min(t0, t);
            t1 = std::max(t1, t);
        }
        const double area = (s1 - s0) * (t1 - t0);
        if (area < best.area) {
            best.area = area;
            best.corners = {s0 * e + t0 * nrm, s1 * e + t0 * nrm, s1 * e + t1 * nrm, s0 * e + t1 * nrm};
        }
        if (m == 2) break;
    }
    return best;
}

}  // namespace lodtex::brep

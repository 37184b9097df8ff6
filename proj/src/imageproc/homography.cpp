#include "lodtex/imageproc/homography.hpp"

#include "lodtex/core/error.hpp"

#include <Eigen/SVD>

#include <cmath>

namespace lodtex::imageproc {

Vec2 Homography::apply(const Vec2& p) const {
    const Vec3 h = m * Vec3(p.x(), p.y(), 1.0);
    return {h.x() / h.z(), h.y() / h.z()};
}

Homography Homography::inverse() const {
    if (std::abs(m.determinant()) <= 1e-12) throw DegenerateGeometryError("homography is singular");
    Homography h{m.inverse()};
    h.normalize();
    return h;
}

void Homography::normalize() {
    if (m(2, 2) != 0.0) m /= m(2, 2);
}

bool has_collinear_triple(std::span<const Vec2> pts) {
    double scale = 0.0;
    for (const auto& p : pts)
        for (const auto& q : pts) scale = std::max(scale, (p - q).norm());
    const double tol = 1e-9 * std::max(scale * scale, 1e-300);
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b)
            for (std::size_t c = b + 1; c < pts.size(); ++c)
                if (std::abs(cross2(pts[b] - pts[a], pts[c] - pts[a])) <= tol) return true;
    return false;
}

namespace {

// Similarity moving the centroid to the origin at mean distance sqrt(2).
Mat3 conditioner(std::span<const Vec2> pts) {
    Vec2 c = Vec2::Zero();
    for (const auto& p : pts) c += p;
    c /= static_cast<double>(pts.size());
    double d = 0.0;
    for (const auto& p : pts) d += (p - c).norm();
    d /= static_cast<double>(pts.size());
    const double s = d > 0 ? std::sqrt(2.0) / d : 1.0;
    Mat3 t;
    t << s, 0, -s * c.x(), 0, s, -s * c.y(), 0, 0, 1;
    return t;
}

}  // namespace

Homography homography_dlt(std::span<const Vec2> src, std::span<const Vec2> dst) {
    if (src.size() != dst.size() || src.size() < 4) throw ArgumentError("homography needs >= 4 matched points");
    const Mat3 ts = conditioner(src), td = conditioner(dst);
    const auto n = static_cast<Eigen::Index>(src.size());
    Eigen::MatrixXd a(2 * n, 9);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Vec3 s = ts * Vec3(src[i].x(), src[i].y(), 1.0);
        const Vec3 d = td * Vec3(dst[i].x(), dst[i].y(), 1.0);
        const double x = s.x() / s.z(), y = s.y() / s.z(), u = d.x() / d.z(), v = d.y() / d.z();
        a.row(2 * i) << -x, -y, -1, 0, 0, 0, u * x, u * y, u;
        a.row(2 * i + 1) << 0, 0, 0, -x, -y, -1, v * x, v * y, v;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const Eigen::VectorXd h = svd.matrixV().col(8);
    Mat3 hn;
    hn << h[0], h[1], h[2], h[3], h[4], h[5], h[6], h[7], h[8];
    Homography out{td.inverse() * hn * ts};
    if (!out.m.allFinite() || std::abs(out.m(2, 2)) < 1e-300)
        throw DegenerateGeometryError("homography is degenerate");
    out.normalize();
    return out;
}

Homography homography_from_points(std::span<const Vec2> src, std::span<const Vec2> dst) {
    if (src.size() != 4 || dst.size() != 4) throw ArgumentError("homography_from_points expects 4 correspondences");
    if (has_collinear_triple(src) || has_collinear_triple(dst))
        throw DegenerateGeometryError("three of the four points are collinear");
    return homography_dlt(src, dst);
}

}  // namespace lodtex::imageproc

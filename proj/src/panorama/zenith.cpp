#include "lodtex/panorama/zenith.hpp"

#include "lodtex/core/error.hpp"

#include <Eigen/SVD>

#include <array>
#include <cmath>

namespace lodtex::panorama {

namespace {

Vec3 canonical(const Vec3& z) { return z.y() < 0 ? Vec3(-z) : z; }

Vec3 normal_of(const SphereSegment& s) { return s.a.normalized().cross(s.b.normalized()); }

// Right singular vector for the smallest singular value, plus the ratio of the
// two smallest singular values (near 1 means the null direction is not unique).
std::pair<Vec3, double> least_singular(const std::vector<Vec3>& rows) {
    Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), 3);
    for (std::size_t i = 0; i < rows.size(); ++i) a.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double ratio = sv.size() >= 2 && sv[1] > 0 ? (sv.size() >= 3 ? sv[2] / sv[1] : 0.0) : 1.0;
    return {svd.matrixV().col(2).normalized(), ratio};
}

}  // namespace

double angle_from_vertical(const SphereSegment& s) {
    const Vec3 a = s.a.normalized(), b = s.b.normalized();
    const Vec3 m = (a + b).normalized();
    Vec3 t = b - a;
    t -= t.dot(m) * m;
    Vec3 mer = Vec3::UnitY() - m.y() * m;
    if (t.norm() < 1e-15 || mer.norm() < 1e-12) return 90.0;
    const double c = std::abs(t.normalized().dot(mer.normalized()));
    return rad2deg(std::acos(std::min(1.0, c)));
}

ZenithEstimate estimate_tile_zenith(std::span<const SphereSegment> segments, const ZenithOptions& opt) {
    std::vector<Vec3> normals;
    for (const auto& s : segments) {
        if (angle_from_vertical(s) > opt.vertical_tol_deg) continue;
        const Vec3 n = normal_of(s);
        if (n.norm() < 1e-12) continue;
        normals.push_back(n.normalized());
    }
    if (normals.size() < 2) throw InsufficientEvidenceError("fewer than 2 near-vertical segments");
    auto [z, ratio] = least_singular(normals);
    if (ratio > 0.999) throw InsufficientEvidenceError("segments do not constrain the zenith");

    const double tol = std::sin(deg2rad(opt.refit_tol_deg));
    std::vector<Vec3> inliers;
    for (const auto& n : normals)
        if (std::abs(n.dot(z)) <= tol) inliers.push_back(n);
    std::size_t weight = normals.size();
    if (inliers.size() >= 2 && inliers.size() < normals.size()) {
        auto [z2, ratio2] = least_singular(inliers);
        if (ratio2 <= 0.999) {
            z = z2;
            weight = inliers.size();
        }
    }
    return {canonical(z), weight};
}

Vec3 consensus_zenith(std::span<const ZenithEstimate> estimates) {
    if (estimates.empty()) throw ArgumentError("consensus of zero zenith estimates");
    Eigen::MatrixXd a(static_cast<Eigen::Index>(estimates.size()), 3);
    for (std::size_t i = 0; i < estimates.size(); ++i)
        a.row(static_cast<Eigen::Index>(i)) =
            std::sqrt(static_cast<double>(std::max<std::size_t>(1, estimates[i].weight))) *
            estimates[i].z.normalized().transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    return canonical(svd.matrixV().col(0).normalized());
}

Attitude attitude_from_zenith(const Vec3& z) {
    if (z.y() == 0.0 && z.z() == 0.0) throw SingularAttitudeError("zenith along the camera x axis");
    const double sgn = z.y() < 0 ? -1.0 : 1.0;
    Attitude a;
    a.pitch = rad2deg(std::atan(z.z() / z.y()));
    a.roll = -rad2deg(std::atan(z.x() / (sgn * std::hypot(z.y(), z.z()))));
    if (a.pitch <= -90.0) a.pitch += 180.0;
    return a;
}

std::optional<double> horizontal_azimuth_peak(std::span<const SphereSegment> segments, const Vec3& zenith,
                                              double vertical_tol_deg, std::size_t min_segments) {
    const Mat3 level = rectification_rotation(attitude_from_zenith(zenith.normalized()));
    std::array<double, 90> hist{};
    std::size_t count = 0;
    for (const auto& s : segments) {
        if (angle_from_vertical(s) <= vertical_tol_deg) continue;
        const Vec3 n = normal_of(s);
        const Vec3 d = n.cross(zenith);
        if (d.norm() < 1e-9) continue;
        const Vec3 l = level * d.normalized();
        double az = std::fmod(rad2deg(std::atan2(l.x(), l.z())), 90.0);
        if (az < 0) az += 90.0;
        hist[static_cast<std::size_t>(az) % 90] += 1.0;
        ++count;
    }
    if (count < min_segments) return std::nullopt;
    std::size_t k = 0;
    for (std::size_t i = 1; i < 90; ++i)
        if (hist[i] > hist[k]) k = i;
    const double l = hist[(k + 89) % 90], c = hist[k], r = hist[(k + 1) % 90];
    const double denom = l - 2 * c + r;
    const double off = denom != 0.0 ? 0.5 * (l - r) / denom : 0.0;
    double peak = std::fmod(k + 0.5 + off, 90.0);
    if (peak < 0) peak += 90.0;
    return peak;
}

}  // namespace lodtex::panorama

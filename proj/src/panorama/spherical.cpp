#include "lodtex/panorama/spherical.hpp"

#include "lodtex/core/error.hpp"

#include <cmath>

namespace lodtex::panorama {

Vec3 dir_from_spherical(double theta, double phi) {
    const double t = deg2rad(theta), p = deg2rad(phi);
    return {std::cos(p) * std::sin(t), std::sin(p), std::cos(p) * std::cos(t)};
}

Spherical spherical_from_dir(const Vec3& v) {
    if (v.x() == 0.0 && v.y() == 0.0 && v.z() == 0.0) throw ArgumentError("direction is the zero vector");
    const double horiz = std::hypot(v.x(), v.z());
    Spherical s;
    s.phi = rad2deg(std::atan2(v.y(), horiz));
    s.theta = horiz == 0.0 ? 0.0 : rad2deg(std::atan2(v.x(), v.z()));
    if (s.theta >= 180.0) s.theta -= 360.0;
    return s;
}

Vec2 pixel_from_spherical(const Spherical& s, int width, int height) {
    return {(s.theta / 360.0 + 0.5) * width, (0.5 - s.phi / 180.0) * height};
}

Spherical spherical_from_pixel(double x, double y, int width, int height) {
    return {(x / width - 0.5) * 360.0, (0.5 - y / height) * 180.0};
}

Mat3 rot_x(double deg) {
    const double c = std::cos(deg2rad(deg)), s = std::sin(deg2rad(deg));
    Mat3 m;
    m << 1, 0, 0, 0, c, -s, 0, s, c;
    return m;
}

Mat3 rot_y(double deg) {
    const double c = std::cos(deg2rad(deg)), s = std::sin(deg2rad(deg));
    Mat3 m;
    m << c, 0, s, 0, 1, 0, -s, 0, c;
    return m;
}

Mat3 rot_z(double deg) {
    const double c = std::cos(deg2rad(deg)), s = std::sin(deg2rad(deg));
    Mat3 m;
    m << c, -s, 0, s, c, 0, 0, 0, 1;
    return m;
}

Mat3 camera_from_world(const Attitude& a) {
    return rot_pitch(a.pitch) * rot_roll(a.roll) * rot_heading(a.heading);
}

Mat3 rectification_rotation(const Attitude& a) {
    return rot_heading(-a.heading) * rot_roll(-a.roll) * rot_pitch(-a.pitch);
}

}  // namespace lodtex::panorama

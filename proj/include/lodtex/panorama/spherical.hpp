#pragma once

#include "lodtex/core/geometry.hpp"

namespace lodtex::panorama {

/// Camera orientation in degrees. Pitch and roll live in (-90, 90].
struct Attitude {
    double pitch = 0.0;
    double roll = 0.0;
    double heading = 0.0;

    bool is_identity() const { return pitch == 0.0 && roll == 0.0 && heading == 0.0; }
};

/// Panorama frame: x right, y up, z forward (theta = 0). Angles in degrees.
Vec3 dir_from_spherical(double theta, double phi);

struct Spherical {
    double theta = 0.0;  // [-180, 180)
    double phi = 0.0;    // [-90, 90]
};

/// Inverse of dir_from_spherical; theta = 0 at the poles.
Spherical spherical_from_dir(const Vec3& v);

/// Equirectangular pixel coordinates; integer values address pixel centres.
/// Column W/2 is theta = 0, row 0 is phi = +90 (up).
Vec2 pixel_from_spherical(const Spherical& s, int width, int height);
Spherical spherical_from_pixel(double x, double y, int width, int height);

Mat3 rot_x(double deg);
/// Rotation about +y that increases azimuth atan2(x, z) by deg.
Mat3 rot_y(double deg);
Mat3 rot_z(double deg);

inline Mat3 rot_pitch(double deg) { return rot_x(deg); }
inline Mat3 rot_roll(double deg) { return rot_z(deg); }
/// Maps a north-aligned direction into a camera turned to heading deg.
inline Mat3 rot_heading(double deg) { return rot_y(-deg); }

/// Maps world-level directions (x east, y up, z north) into the camera frame:
/// R_pitch(pitch) R_roll(roll) R_heading(heading).
Mat3 camera_from_world(const Attitude& a);
/// The rectification rotation R_heading(-heading) R_roll(-roll) R_pitch(-pitch).
Mat3 rectification_rotation(const Attitude& a);

/// East-north-up world vector to the north-aligned panorama frame and back.
inline Vec3 enu_to_frame(const Vec3& e) { return {e.x(), e.z(), e.y()}; }
inline Vec3 frame_to_enu(const Vec3& f) { return {f.x(), f.z(), f.y()}; }

}  // namespace lodtex::panorama

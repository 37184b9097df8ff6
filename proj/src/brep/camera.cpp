#include "lodtex/brep/camera.hpp"

#include "lodtex/core/error.hpp"

#include <cmath>

namespace lodtex::brep {

void validate_pose(const CameraPose& p) {
    if (!(p.fov > 0.0 && p.fov < 180.0)) throw ArgumentError("camera fov must be in (0, 180)");
    if (!(p.height > 0.0)) throw ArgumentError("camera height must be positive");
}

Vec3 camera_origin(const CameraPose& p, const Vec3& toward) {
    Vec3 o = p.position + Vec3(0.0, 0.0, p.height);
    const double len = toward.norm();
    if (len > 0.0) o += p.near_offset * toward / len;
    return o;
}

}  // namespace lodtex::brep

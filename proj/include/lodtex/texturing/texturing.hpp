#pragma once

#include "lodtex/brep/camera.hpp"
#include "lodtex/brep/facade.hpp"
#include "lodtex/brep/mesh.hpp"
#include "lodtex/core/image.hpp"
#include "lodtex/panorama/spherical.hpp"
#include "lodtex/texturing/rays.hpp"

#include <array>
#include <filesystem>
#include <optional>

namespace lodtex::texturing {

struct FacadeTexture {
    RasterImage pixels;
    brep::Quad3D quad;
    brep::PlaneFrame frame;
    /// (u_min, u_max, v_min, v_max): plane coordinates of the quad in metres.
    std::array<double, 4> uv_bounds{};
    double px_per_m = 0.0;
};

std::array<double, 4> uv_bounds(const brep::PlaneFrame& frame, const brep::Quad3D& quad);

/// Normalized (u, v) with q1 = (0, 0) and q3 = (1, 1); nullopt outside the
/// quad or more than 1e-6 m off its plane.
std::optional<Vec2> uv_from_point(const Vec3& p, const brep::PlaneFrame& frame, const brep::Quad3D& quad);

/// World point of texel (col, row) in a W x H texture; row 0 is the top edge.
Vec3 texel_point(const brep::Quad3D& quad, int col, int row, int width, int height);

/// Texture size for a quad: round(side * px_per_m), at least 1.
std::pair<int, int> texture_size(const brep::Quad3D& quad, double px_per_m);

/// Inverse-maps every texel into the panorama. pose.heading is the
/// direction of the panorama's centre column; tilt carries its pitch and
/// roll (zero for an already rectified panorama).
FacadeTexture synthesize_texture(const RasterImage& pano, const brep::CameraPose& pose, const brep::Quad3D& quad,
                                 const brep::PlaneFrame& frame, double px_per_m,
                                 const panorama::Attitude& tilt = {});

/// Reverses the winding of faces whose normal points away from the camera.
brep::Mesh flip_inward_normals(const brep::Mesh& mesh, const Vec3& camera);

struct ExportPaths {
    std::filesystem::path obj, mtl, png;
};

/// Writes <prefix>.obj, <prefix>.mtl and <prefix>.png.
ExportPaths export_textured(const brep::Quad3D& quad, const RasterImage& texture, const std::filesystem::path& prefix);

}  // namespace lodtex::texturing

#include "lodtex/texturing/texturing.hpp"

#include "lodtex/core/error.hpp"

#include <cmath>

namespace lodtex::texturing {

std::array<double, 4> uv_bounds(const brep::PlaneFrame& frame, const brep::Quad3D& quad) {
    const Vec2 a = brep::project_to_plane(quad.q[0], frame);
    const Vec2 b = brep::project_to_plane(quad.q[1], frame);
    const Vec2 d = brep::project_to_plane(quad.q[3], frame);
    return {a.x(), b.x(), a.y(), d.y()};
}

std::optional<Vec2> uv_from_point(const Vec3& p, const brep::PlaneFrame& frame, const brep::Quad3D& quad) {
    if (std::abs((p - frame.centroid).dot(frame.n)) > 1e-6) return std::nullopt;
    const auto bnd = uv_bounds(frame, quad);
    const Vec2 xy = brep::project_to_plane(p, frame);
    const Vec2 uv((xy.x() - bnd[0]) / (bnd[1] - bnd[0]), (xy.y() - bnd[2]) / (bnd[3] - bnd[2]));
    constexpr double slack = 1e-9;
    if (uv.x() < -slack || uv.x() > 1 + slack || uv.y() < -slack || uv.y() > 1 + slack) return std::nullopt;
    return uv;
}

Vec3 texel_point(const brep::Quad3D& quad, int col, int row, int width, int height) {
    const double s = (col + 0.5) / width;
    const double t = 1.0 - (row + 0.5) / height;
    return quad.q[0] + s * (quad.q[1] - quad.q[0]) + t * (quad.q[3] - quad.q[0]);
}

std::pair<int, int> texture_size(const brep::Quad3D& quad, double px_per_m) {
    if (!(px_per_m > 0)) throw ArgumentError("px_per_m must be positive");
    const int w = std::max(1, static_cast<int>(std::lround(quad.width() * px_per_m)));
    const int h = std::max(1, static_cast<int>(std::lround(quad.height() * px_per_m)));
    return {w, h};
}

FacadeTexture synthesize_texture(const RasterImage& pano, const brep::CameraPose& pose, const brep::Quad3D& quad,
                                 const brep::PlaneFrame& frame, double px_per_m, const panorama::Attitude& tilt) {
    if (pano.empty()) throw ArgumentError("empty panorama");
    const Vec3 origin = brep::camera_origin(pose, -frame.n);
    const double side = (origin - frame.centroid).dot(frame.n);
    if (std::abs(side) < 1e-9) throw DegenerateViewError("camera lies in the facade plane");
    if (side < 0) throw DegenerateViewError("facade faces away from the camera");

    const Mat3 rot = panorama::camera_from_world({tilt.pitch, tilt.roll, pose.heading});
    const auto [w, h] = texture_size(quad, px_per_m);
    FacadeTexture tex{RasterImage(w, h, pano.channels()), quad, frame, uv_bounds(frame, quad), px_per_m};
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            const Vec3 d = rot * panorama::enu_to_frame((texel_point(quad, c, r, w, h) - origin).normalized());
            const Vec2 p = panorama::pixel_from_spherical(panorama::spherical_from_dir(d), pano.width(), pano.height());
            for (int ch = 0; ch < pano.channels(); ++ch)
                tex.pixels.at(c, r, ch) =
                    static_cast<std::uint8_t>(std::lround(sample_bilinear(pano, p.x(), p.y(), ch, true)));
        }
    return tex;
}

brep::Mesh flip_inward_normals(const brep::Mesh& mesh, const Vec3& camera) {
    brep::Mesh out = mesh;
    for (std::size_t f = 0; f < out.size(); ++f)
        if (mesh.face_normal(f).dot(camera - mesh.face_centroid(f)) < 0) std::swap(out.faces[f][1], out.faces[f][2]);
    return out;
}

}  // namespace lodtex::texturing

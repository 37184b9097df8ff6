#pragma once

#include "lodtex/core/image.hpp"
#include "lodtex/panorama/spherical.hpp"

#include <optional>
#include <vector>

namespace lodtex::panorama {

/// Square gnomonic view looking along azimuth yaw_deg at zero elevation.
struct TileCamera {
    double yaw_deg = 0.0;
    double fov_deg = 90.0;
    int size = 0;

    double focal() const;
    /// Unit direction in the panorama frame through tile pixel (x, y).
    Vec3 direction(double x, double y) const;
    /// Tile pixel of a direction; nullopt behind the image plane.
    std::optional<Vec2> project(const Vec3& d) const;
};

struct Tile {
    TileCamera camera;
    RasterImage image;
};

/// Tiles with centres every tile_fov * (1 - overlap) degrees of azimuth,
/// starting at 0. size <= 0 picks the panorama's native angular resolution.
std::vector<Tile> extract_tiles(const RasterImage& pano, double tile_fov_deg, double overlap, int size = 0);

std::vector<TileCamera> tile_cameras(int pano_width, double tile_fov_deg, double overlap, int size = 0);

}  // namespace lodtex::panorama

#pragma once

#include "lodtex/core/geometry.hpp"
#include "lodtex/core/image.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace fixture {

using lodtex::Vec3;
using Ring3 = std::vector<Vec3>;

struct Opening {
    std::string type = "Window";  // or "Door"
    std::string id;
    std::vector<Ring3> polygons;
};

struct Surface {
    std::string type;  // WallSurface, GroundSurface, RoofSurface
    std::string id;
    std::vector<Ring3> polygons;
    std::vector<Opening> openings;
};

struct Building {
    std::string id;
    std::vector<Surface> surfaces;
};

std::string citygml(const std::vector<Building>& buildings, const std::string& srs = "EPSG:25832");
void write_text(const std::filesystem::path& p, const std::string& text);

/// Axis-aligned box [x0, x1] x [y0, y1] x [z0, z1]; ground, walls south,
/// east, north, west (outward winding), roof. Wall ids are <id>_south etc.
Building box(const std::string& id, double x0, double y0, double x1, double y1, double z0, double z1);

/// Rectangle in the plane of wall ring `wall` (P0, Q0, Q1, P1): offset
/// `along` metres from P, `up` metres above the wall base.
Ring3 wall_rect(const Ring3& wall, double along, double up, double width, double height);

/// Scene used by the end-to-end and determinism checks: one 10 x 8 x 6 m
/// box with a window on its south wall, one panorama 6 m south of the wall
/// centre, and a mask manifest in the facade texture frame.
struct SceneSpec {
    int pano_width = 4096;
    double px_per_m = 102.4;
    double heading = 30.0;
    double camera_distance = 6.0;
    double east = 691000.0, north = 5335000.0, ground = 520.0;
};

struct SceneInfo {
    std::filesystem::path root;
    lodtex::RasterImage reference;  // analytic south-wall texture
    int tex_width = 0, tex_height = 0;
};

SceneInfo write_scene(const std::filesystem::path& root, const SceneSpec& spec = {});

std::filesystem::path temp_dir(const std::string& name);

}  // namespace fixture

#pragma once

#include "lodtex/core/geometry.hpp"
#include "lodtex/geo/citygml.hpp"

#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace lodtex::fov {

/// Angular window of a facade seen from a camera. Bounds are bearings in
/// [0, 360); the window runs clockwise from left to right.
struct FovWindow {
    double left = 0.0;
    double right = 0.0;
    double optimal_pitch = 0.0;

    double width() const;
    /// Bisector bearing, may be >= 360 when the window spans north.
    double center() const { return left + width() / 2.0; }
};

/// Bearing in degrees clockwise from north (+y), in [0, 360).
double bearing(const Vec2& from, const Vec2& to);

struct FovOptions {
    double sample_spacing_m = 0.5;
    double camera_height_m = 1.7;
    /// Facade height above ground; the pitch aims at its middle.
    double wall_height_m = 10.0;
};

FovWindow effective_fov(const Vec2& camera_xy, const geo::Footprint2D& target,
                        std::span<const geo::Footprint2D> neighbors, const FovOptions& opt = {});

/// Boundary points at <= spacing, including every vertex.
std::vector<Vec2> sample_boundary(std::span<const Vec2> ring, double spacing);

/// n bearings over the window shrunk by width/20 on both sides. Values are
/// unwrapped (monotone), so they may exceed 360.
std::vector<double> sample_horizontal_angles(const FovWindow& w, int n = 10);

std::vector<double> sample_pitches(double optimal_pitch, int k = 5, double range_deg = 5.0);

struct FovRecord {
    std::string building_id;
    std::string pano_id;
    FovWindow window;
};

void write_fov_csv(std::ostream& out, std::span<const FovRecord> rows);

}  // namespace lodtex::fov

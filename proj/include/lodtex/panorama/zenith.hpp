#pragma once

#include "lodtex/panorama/spherical.hpp"

#include <optional>
#include <span>
#include <vector>

namespace lodtex::panorama {

/// Line segment on the view sphere, as two unit directions in the panorama frame.
struct SphereSegment {
    Vec3 a;
    Vec3 b;
};

struct ZenithEstimate {
    Vec3 z = Vec3::UnitY();
    std::size_t weight = 0;
};

struct ZenithOptions {
    double vertical_tol_deg = 30.0;
    /// Second pass keeps normals within this angle of perpendicular to z.
    double refit_tol_deg = 3.0;
};

/// Angle in degrees between the segment and the local meridian at its midpoint.
double angle_from_vertical(const SphereSegment& s);

/// Least singular vector of the great-circle normals of near-vertical segments,
/// refitted once on the consistent normals. Sign: z_y >= 0.
ZenithEstimate estimate_tile_zenith(std::span<const SphereSegment> segments, const ZenithOptions& opt = {});

/// Dominant right-singular vector of the weight-replicated estimates.
Vec3 consensus_zenith(std::span<const ZenithEstimate> estimates);

Attitude attitude_from_zenith(const Vec3& z);

/// Peak of the 1-degree histogram of horizontal vanishing directions (mod 90,
/// in the levelled frame) with parabolic interpolation; nullopt with fewer
/// than min_segments horizontal segments.
std::optional<double> horizontal_azimuth_peak(std::span<const SphereSegment> segments, const Vec3& zenith,
                                              double vertical_tol_deg = 30.0, std::size_t min_segments = 20);

}  // namespace lodtex::panorama

#pragma once

#include "lodtex/brep/facade.hpp"
#include "lodtex/core/image.hpp"
#include "lodtex/geo/citygml.hpp"

#include <optional>
#include <span>
#include <vector>

namespace lodtex::eval {

struct GtFacadeMask {
    BinaryMask mask;      // facade true, openings false
    BinaryMask openings;  // grouped opening regions
    brep::PlaneFrame frame;
    brep::Quad3D quad;
    double px_per_m = 0.0;
    std::size_t opening_count = 0;  // individual opening surfaces
    std::size_t group_count = 0;
};

struct GtOptions {
    double group_distance_m = 0.1;
    /// Texture-side camera used to orient the plane; defaults to the wall's outward normal.
    std::optional<Vec3> camera;
};

/// Group label per opening: hulls closer than threshold are merged
/// transitively. Labels are numbered by first member.
std::vector<std::size_t> group_openings(const std::vector<Ring2>& hulls, double threshold);

/// wall_index indexes BRepBuilding::wall_surfaces().
GtFacadeMask extract_gt_mask(const geo::BRepBuilding& b, std::size_t wall_index, double px_per_m,
                             const GtOptions& opt = {});

}  // namespace lodtex::eval

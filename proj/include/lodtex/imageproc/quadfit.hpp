#pragma once

#include "lodtex/core/geometry.hpp"

#include <array>
#include <span>
#include <vector>

namespace lodtex::imageproc {

struct QuadFitParams {
    int max_vertices = 10;
    double eps_init = 0.1;
    double eps_max = 0.4;
    double eps_step = 0.02;
    double margin = 0.0;
};

enum class QuadSource { Hull, Simplified, Subset, MinAreaRect };

struct QuadFit {
    /// Top-left, top-right, bottom-right, bottom-left in image coordinates
    /// (y down), which is counter-clockwise by signed area.
    std::array<Vec2, 4> corners;
    double iou = 0.0;
    QuadSource source = QuadSource::Hull;
    /// Tolerances visited by the simplification sweep (fractions of perimeter).
    std::vector<double> eps_tried;
};

/// eps_init, eps_init + step, ... up to eps_max.
std::vector<double> epsilon_schedule(const QuadFitParams& p);

/// Quadrilateral maximizing rasterized IoU with the hull. Candidates: the
/// first 4-vertex Douglas-Peucker result of the epsilon sweep, the minimum
/// area rectangle, and every 4-subset of the hull when it has at most
/// max_vertices points. margin > 0 grows the result about its centroid.
QuadFit fit_quadrilateral(std::span<const Vec2> hull, const QuadFitParams& p = {});

/// Reorders 4 points to start at the top-left with positive signed area.
std::array<Vec2, 4> order_quad(std::array<Vec2, 4> q);

}  // namespace lodtex::imageproc

#include <doctest.h>

#include "fixtures.hpp"

#include "lodtex/core/error.hpp"
#include "lodtex/eval/alignment.hpp"
#include "lodtex/eval/gt_mask.hpp"
#include "lodtex/eval/report.hpp"
#include "lodtex/geo/citygml.hpp"

#include <cmath>
#include <sstream>

using namespace lodtex;
using namespace lodtex::eval;

namespace {

geo::BRepBuilding parse_one(const fixture::Building& b) { return geo::parse_citygml(fixture::citygml({b})).buildings.at(0); }

/// Facade with two windows, drawn analytically: scale s about (cx, cy), then shifted by (tx, ty).
BinaryMask facade(int w, int h, double s = 1.0, double tx = 0, double ty = 0) {
    const double cx = w / 2.0, cy = h / 2.0;
    auto inside = [](double x, double y, double x0, double y0, double x1, double y1) {
        return x >= x0 && x < x1 && y >= y0 && y < y1;
    };
    BinaryMask m(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double u = cx + (x - tx - cx) / s, v = cy + (y - ty - cy) / s;
            const bool wall = inside(u, v, 80, 60, 320, 240);
            const bool win = inside(u, v, 120, 100, 170, 150) || inside(u, v, 220, 100, 270, 190);
            m.set(x, y, wall && !win);
        }
    return m;
}

}  // namespace

TEST_CASE("gt mask of a wall with openings") {
    auto b = fixture::box("G", 0, 0, 10, 8, 0, 6);
    auto& south = b.surfaces[1];
    // 3 m^2 of openings on a 60 m^2 wall
    south.openings.push_back({"Window", "w1", {fixture::wall_rect(south.polygons[0], 1.0, 2.0, 1.5, 1.0)}});
    south.openings.push_back({"Door", "d1", {fixture::wall_rect(south.polygons[0], 5.0, 0.0, 1.0, 1.5)}});
    const auto bldg = parse_one(b);
    const auto gt = extract_gt_mask(bldg, 0, 50.0);
    CHECK(gt.mask.width() == 500);
    CHECK(gt.mask.height() == 300);
    CHECK(gt.opening_count == 2);
    CHECK(gt.group_count == 2);
    const double frac = static_cast<double>(gt.mask.count()) / (500.0 * 300.0);
    CHECK(frac == doctest::Approx(0.95).epsilon(0.01));
    // door touches the bottom edge, window sits 2 m up: rows count from the top
    CHECK_FALSE(gt.mask(275, 299));
    CHECK_FALSE(gt.mask(80, 300 - 125));
    CHECK(gt.mask(80, 10));

    CHECK_THROWS_AS(extract_gt_mask(bldg, 9, 50.0), ArgumentError);
    CHECK_THROWS_AS(extract_gt_mask(bldg, 0, 0.0), ArgumentError);

    const auto plain = extract_gt_mask(bldg, 1, 50.0);
    CHECK(plain.mask.count() == plain.mask.width() * static_cast<std::size_t>(plain.mask.height()));
    CHECK(plain.opening_count == 0);
}

TEST_CASE("nearby openings are grouped") {
    auto b = fixture::box("G", 0, 0, 10, 8, 0, 6);
    auto& south = b.surfaces[1];
    south.openings.push_back({"Window", "a", {fixture::wall_rect(south.polygons[0], 1.0, 2.0, 1.0, 1.0)}});
    south.openings.push_back({"Window", "b", {fixture::wall_rect(south.polygons[0], 2.05, 2.0, 1.0, 1.0)}});
    const auto gt = extract_gt_mask(parse_one(b), 0, 50.0);
    CHECK(gt.opening_count == 2);
    CHECK(gt.group_count == 1);
    // the 5 cm mullion is closed over
    CHECK_FALSE(gt.mask(101, 300 - 125));

    const std::vector<Ring2> hulls{{{0, 0}, {1, 0}, {1, 1}, {0, 1}},
                                   {{1.05, 0}, {2, 0}, {2, 1}, {1.05, 1}},
                                   {{5, 5}, {6, 5}, {6, 6}, {5, 6}},
                                   {{2.08, 0}, {3, 0}, {3, 1}, {2.08, 1}}};
    CHECK(group_openings(hulls, 0.1) == std::vector<std::size_t>{0, 0, 1, 0});
    CHECK(group_openings(hulls, 0.01) == std::vector<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("alignment recovers identity, shift and scale") {
    const int w = 400, h = 300;
    const auto gt = facade(w, h);
    const auto same = align_and_score(gt, gt);
    CHECK(same.iou == 1.0);
    CHECK(same.identity_iou == 1.0);
    CHECK(same.scale == 1.0);
    CHECK(same.dx == 0);
    CHECK(same.dy == 0);

    const auto shifted = align_and_score(facade(w, h, 1.0, 30, -20), gt);
    CHECK(std::abs(shifted.dx + 30) <= 2);
    CHECK(std::abs(shifted.dy - 20) <= 2);
    CHECK(shifted.iou >= 0.97);
    CHECK(shifted.iou >= shifted.identity_iou);

    const auto scaled = align_and_score(facade(w, h, 1.1), gt);
    CHECK(std::abs(scaled.scale - 1 / 1.1) <= 0.01);
    CHECK(scaled.iou >= 0.95);
    CHECK(scaled.coarse.iou <= scaled.iou);

    CHECK(mask_iou(BinaryMask(5, 5), BinaryMask(5, 5)) == 0.0);
    CHECK_THROWS_AS(mask_iou(BinaryMask(5, 5), BinaryMask(4, 5)), ArgumentError);
}

TEST_CASE("pair evaluation and batch summary") {
    const auto gt = facade(400, 300);
    const auto same = evaluate_pair(gt, gt);
    CHECK(same.raw_iou == 1.0);
    CHECK(same.aligned_iou == 1.0);
    CHECK(same.ssim == doctest::Approx(1.0));

    BinaryMask other(400, 300);
    for (int y = 0; y < 40; ++y)
        for (int x = 0; x < 40; ++x) other.set(x, y);
    const auto apart = evaluate_pair(other, gt);
    CHECK(apart.raw_iou == 0.0);
    CHECK(apart.aligned_iou <= 0.1);

    // predictions at another resolution are resampled first
    const auto half = evaluate_pair(resample_mask(gt, 200, 150), gt);
    CHECK(half.raw_iou >= 0.97);

    const auto j = to_json(same);
    for (const char* k : {"raw_iou", "aligned_iou", "ssim", "scale", "dx", "dy"}) CHECK(j.contains(k));

    const std::vector<BatchRow> rows{{"B1", "south", same}, {"B2", "east", apart}};
    const auto m = mean_report(rows);
    CHECK(m.raw_iou == doctest::Approx(0.5));
    std::ostringstream os;
    write_batch_csv(os, rows);
    const auto s = os.str();
    CHECK(s.rfind("building_id,wall,raw_iou,aligned_iou,ssim,scale,dx,dy\nB1,south,1,1,", 0) == 0);
    CHECK(s.find("\nmean,,0.5,") != std::string::npos);
}

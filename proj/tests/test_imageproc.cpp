#include <doctest.h>

#include "lodtex/brep/plane.hpp"
#include "lodtex/core/error.hpp"
#include "lodtex/core/random.hpp"
#include "lodtex/imageproc/components.hpp"
#include "lodtex/imageproc/contour.hpp"
#include "lodtex/imageproc/filter.hpp"
#include "lodtex/imageproc/homography.hpp"
#include "lodtex/imageproc/morphology.hpp"
#include "lodtex/imageproc/polygon.hpp"
#include "lodtex/imageproc/quadfit.hpp"
#include "lodtex/imageproc/ssim.hpp"
#include "lodtex/imageproc/warp.hpp"

#include <cmath>

using namespace lodtex;
using namespace lodtex::imageproc;

namespace {

BinaryMask random_mask(int w, int h, double p, std::uint64_t seed) {
    Rng rng(seed);
    BinaryMask m(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) m.set(x, y, uniform01(rng) < p);
    return m;
}

void fill(BinaryMask& m, int x0, int y0, int x1, int y1, bool v = true) {
    for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) m.set(x, y, v);
}

RasterImage checkerboard(int w, int h, int sq) {
    RasterImage img(w, h, 1);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) img.at(x, y) = ((x / sq + y / sq) % 2) ? 220 : 30;
    return img;
}

}  // namespace

TEST_CASE("gaussian blur") {
    const GrayImage flat(20, 15, 1, 77.0f);
    const auto b = gaussian_blur(flat, 5);
    for (float v : b.data()) CHECK(v == doctest::Approx(77.0f));

    GrayImage imp(21, 21, 1, 0.0f);
    imp.at(10, 10) = 1.0f;
    const auto g = gaussian_blur(imp, 7, 1.2);
    float peak = 0;
    int px = 0, py = 0;
    for (int y = 0; y < 21; ++y)
        for (int x = 0; x < 21; ++x)
            if (g.at(x, y) > peak) {
                peak = g.at(x, y);
                px = x;
                py = y;
            }
    CHECK(px == 10);
    CHECK(py == 10);
    const auto k = gaussian_kernel(7, 1.2);
    CHECK(g.at(12, 9) == doctest::Approx(k[5] * k[2]).epsilon(1e-6));

    CHECK_THROWS_AS(gaussian_blur(flat, 4), ArgumentError);
    CHECK(default_sigma(25) == doctest::Approx(0.3 * 11 + 0.8));
}

TEST_CASE("separable blur equals direct 2D convolution") {
    Rng rng(9);
    GrayImage img(64, 64, 1);
    for (auto& v : img.data()) v = static_cast<float>(uniform01(rng));
    const int ks = 9;
    const double sigma = 2.0;
    std::vector<double> t(ks);
    double s = 0;
    for (int i = 0; i < ks; ++i) s += t[i] = std::exp(-(i - 4) * (i - 4) / (2 * sigma * sigma));
    for (auto& v : t) v /= s;
    const auto fast = gaussian_blur(img, ks, sigma);
    double worst = 0;
    for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 64; ++x) {
            double acc = 0;
            for (int j = 0; j < ks; ++j)
                for (int i = 0; i < ks; ++i)
                    acc += t[i] * t[j] * img.at(reflect101(x + i - 4, 64), reflect101(y + j - 4, 64));
            worst = std::max(worst, std::abs(acc - fast.at(x, y)));
        }
    CHECK(worst < 1e-6);
    CHECK(reflect101(-1, 10) == 1);
    CHECK(reflect101(10, 10) == 8);
}

TEST_CASE("morphology examples") {
    BinaryMask sq(60, 60);
    fill(sq, 10, 10, 50, 50);
    fill(sq, 29, 29, 32, 32, false);
    const auto closed = morphology(sq, MorphOp::Close, 15, 15);
    CHECK(closed(30, 30));
    CHECK(closed.count() == 1600);

    BinaryMask speck = sq;
    fill(speck, 29, 29, 32, 32);
    fill(speck, 2, 2, 4, 4);
    const auto opened = morphology(speck, MorphOp::Open, 5, 5);
    CHECK_FALSE(opened(2, 2));
    CHECK(opened.count() == 1600);

    const auto r = random_mask(40, 40, 0.5, 1);
    for (auto op : {MorphOp::Open, MorphOp::Close}) {
        const auto once = morphology(r, op, 3, 5);
        CHECK(morphology(once, op, 3, 5) == once);
    }
    CHECK_THROWS_AS(morphology(r, MorphOp::Dilate, 0, 3), ArgumentError);
}

TEST_CASE("dilation distributes over union and erosion is its dual") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto a = random_mask(64, 64, 0.1, seed), b = random_mask(64, 64, 0.1, seed + 100);
        CHECK(dilate(mask_or(a, b), 5, 3) == mask_or(dilate(a, 5, 3), dilate(b, 5, 3)));
        CHECK(erode(a, 3, 7) == mask_not(dilate(mask_not(a), 3, 7)));
    }
}

TEST_CASE("connected components") {
    BinaryMask m(40, 20);
    fill(m, 0, 0, 10, 10);
    fill(m, 20, 5, 30, 15);
    const auto c = connected_components(m);
    REQUIRE(c.count() == 2);
    CHECK(c.areas[0] == 100);
    CHECK(c.areas[1] == 100);
    CHECK(c.labels.at(0, 0) == 1);
    CHECK(c.labels.at(25, 10) == 2);

    BinaryMask d(3, 3);
    d.set(0, 0);
    d.set(1, 1);
    d.set(2, 2);
    CHECK(connected_components(d, 8).count() == 1);
    CHECK(connected_components(d, 4).count() == 3);
    CHECK_THROWS_AS(connected_components(d, 6), ArgumentError);

    BinaryMask big(240, 30);
    fill(big, 0, 0, 1999 / 20, 20);  // 99 x 20 = 1980
    fill(big, 0, 20, 19, 21);        // + 19 = 1999
    fill(big, 110, 0, 110 + 100, 20);
    fill(big, 110, 20, 111, 21);  // 2001
    const auto kept = remove_small_components(big, 2000);
    CHECK_FALSE(kept(0, 0));
    CHECK(kept(150, 5));
    CHECK(kept.count() == 2001);
}

TEST_CASE("largest contour hull") {
    BinaryMask m(50, 40);
    fill(m, 5, 6, 25, 30);
    auto hull = convex_hull_of_largest_contour(m);
    REQUIRE(hull.size() == 4);
    CHECK(std::abs(signed_area(hull)) == doctest::Approx(19.0 * 23.0));

    BinaryMask two(120, 60);
    fill(two, 0, 0, 20, 25);    // 500
    fill(two, 50, 5, 100, 45);  // 2000
    hull = convex_hull_of_largest_contour(two);
    for (const auto& p : hull) CHECK(p.x() >= 50);

    BinaryMask star(41, 41);
    for (int y = 0; y < 41; ++y)
        for (int x = 0; x < 41; ++x) {
            const double a = std::atan2(y - 20.0, x - 20.0), r = std::hypot(x - 20.0, y - 20.0);
            star.set(x, y, r <= 10 + 8 * std::cos(5 * a));
        }
    const auto contours = outer_contours(star);
    REQUIRE(!contours.empty());
    hull = convex_hull_of_largest_contour(star);
    CHECK(std::abs(signed_area(hull)) >= std::abs(contours[0].area));
    CHECK(signed_area(hull) > 0);

    CHECK_THROWS_AS(convex_hull_of_largest_contour(BinaryMask(4, 4)), EmptyMaskError);
}

TEST_CASE("polygon iou") {
    const Ring2 a{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    const Ring2 b{{0.5, 0}, {1.5, 0}, {1.5, 1}, {0.5, 1}};
    const Ring2 far{{5, 5}, {6, 5}, {6, 6}, {5, 6}};
    CHECK(polygon_iou(a, a) == 1.0);
    CHECK(polygon_iou(a, far) == 0.0);
    CHECK(std::abs(polygon_iou(a, b) - 1.0 / 3.0) <= 2.0 / 1024);
    CHECK(polygon_iou(a, b) == polygon_iou(b, a));
    CHECK(polygon_iou(Ring2{}, Ring2{}) == 0.0);
}

TEST_CASE("rasterize") {
    const Ring2 r{{10, 5}, {50, 5}, {50, 25}, {10, 25}};
    CHECK(rasterize_polygon(r, 80, 40).count() == 800);
    const Ring2 tri{{0, 0}, {100, 0}, {100, 100}};
    const auto n = static_cast<double>(rasterize_polygon(tri, 100, 100).count());
    CHECK(std::abs(n - 5000) <= 100);
    CHECK(rasterize_polygon(Ring2{}, 10, 10).count() == 0);
    Mat3 t = Mat3::Identity();
    t(0, 2) = 5;
    const auto shifted = rasterize_polygon(r, 80, 40, t);
    CHECK(shifted(52, 10));
    CHECK_FALSE(shifted(12, 10));
    CHECK(shifted.count() == 800);
}

TEST_CASE("douglas peucker") {
    Ring2 ring;
    for (int i = 0; i < 10; ++i) ring.emplace_back(i, 0.01 * (i % 2));
    ring.emplace_back(10, 0);
    ring.emplace_back(10, 5);
    ring.emplace_back(0, 5);
    const auto s = simplify_closed(ring, 0.1);
    CHECK(s.size() == 4);
}

TEST_CASE("quad fit examples") {
    const Ring2 rect{{10, 10}, {90, 10}, {90, 50}, {10, 50}};
    auto f = fit_quadrilateral(rect);
    CHECK(f.iou == 1.0);
    CHECK((f.corners[0] - Vec2(10, 10)).norm() < 1e-12);
    CHECK((f.corners[1] - Vec2(90, 10)).norm() < 1e-12);
    CHECK((f.corners[2] - Vec2(90, 50)).norm() < 1e-12);
    CHECK((f.corners[3] - Vec2(10, 50)).norm() < 1e-12);

    // 2% chamfers, 12 vertices
    const double c = 0.02 * 80;
    Ring2 ch;
    for (const auto& [p, dx, dy] : std::vector<std::tuple<Vec2, double, double>>{
             {{10, 10}, 1, 1}, {{90, 10}, -1, 1}, {{90, 50}, -1, -1}, {{10, 50}, 1, -1}}) {
        ch.push_back(p + Vec2(dx * c, 0));
        ch.push_back(p + Vec2(dx * c * 0.3, dy * c * 0.3));
        ch.push_back(p + Vec2(0, dy * c));
    }
    const Ring2 hull = convex_hull(ch);
    REQUIRE(hull.size() == 12);
    f = fit_quadrilateral(hull);
    CHECK(f.iou >= 0.98);
    CHECK(f.iou >= polygon_iou(brep::min_area_rect(hull).corners, hull));
    CHECK(f.eps_tried.size() <= epsilon_schedule({}).size());

    const Ring2 tri{{0, 0}, {40, 0}, {10, 30}};
    f = fit_quadrilateral(tri);
    CHECK(f.iou >= 0.99);

    CHECK_THROWS_AS(fit_quadrilateral(Ring2{{0, 0}, {1, 1}, {2, 2}}), DegenerateGeometryError);
}

TEST_CASE("epsilon schedule") {
    const auto s = epsilon_schedule({});
    REQUIRE(s.size() == 16);
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(s[i] == doctest::Approx(0.1 + 0.02 * i));
    QuadFitParams bad;
    bad.eps_init = 0.5;
    CHECK_THROWS_AS(epsilon_schedule(bad), ArgumentError);
}

TEST_CASE("quad ordering") {
    const auto q = order_quad({Vec2(0, 10), Vec2(10, 10), Vec2(10, 0), Vec2(0, 0)});
    CHECK(q[0] == Vec2(0, 0));
    CHECK(q[1] == Vec2(10, 0));
    CHECK(q[2] == Vec2(10, 10));
    CHECK(q[3] == Vec2(0, 10));
}

TEST_CASE("homography from four points") {
    const std::vector<Vec2> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    auto h = homography_from_points(sq, sq);
    CHECK((h.m - Mat3::Identity()).norm() < 1e-9);

    const std::vector<Vec2> t{{0, 0}, {199, 0}, {199, 99}, {0, 99}};
    h = homography_from_points(sq, t);
    Mat3 want = Mat3::Identity();
    want(0, 0) = 199;
    want(1, 1) = 99;
    CHECK((h.m - want).norm() < 1e-9);

    Mat3 p;
    p << 1.2, 0.1, 5, -0.05, 0.9, 3, 0.001, 0.002, 1;
    const std::vector<Vec2> src{{10, 20}, {300, 15}, {280, 200}, {30, 240}};
    std::vector<Vec2> dst;
    for (const auto& s : src) {
        const Vec3 r = p * Vec3(s.x(), s.y(), 1);
        dst.emplace_back(r.x() / r.z(), r.y() / r.z());
    }
    h = homography_from_points(src, dst);
    CHECK((h.m - p).norm() / p.norm() < 1e-9);
    for (std::size_t i = 0; i < 4; ++i) CHECK((h.apply(src[i]) - dst[i]).norm() < 1e-6);

    const std::vector<Vec2> col{{0, 0}, {1, 1}, {2, 2}, {0, 1}};
    CHECK_THROWS_AS(homography_from_points(col, sq), DegenerateGeometryError);
    CHECK(has_collinear_triple(col));
}

TEST_CASE("least squares homography") {
    Mat3 p;
    p << 0.8, -0.2, 12, 0.1, 1.1, -4, 0.0005, -0.0003, 1;
    Rng rng(4);
    std::vector<Vec2> src, dst;
    for (int i = 0; i < 30; ++i) {
        src.emplace_back(400 * uniform01(rng), 300 * uniform01(rng));
        const Vec3 r = p * Vec3(src.back().x(), src.back().y(), 1);
        dst.emplace_back(r.x() / r.z(), r.y() / r.z());
    }
    const auto h = homography_dlt(src, dst);
    CHECK((h.m - p).norm() / p.norm() < 1e-9);
    CHECK((h.inverse().apply(dst[3]) - src[3]).norm() < 1e-6);
}

TEST_CASE("perspective warp") {
    const auto img = checkerboard(64, 48, 8);
    CHECK(warp_perspective(img, Homography{}, 64, 48) == img);

    Homography s;
    s.m(0, 0) = 2;
    s.m(1, 1) = 2;
    const auto big = warp_perspective(img, s, 128, 96);
    CHECK(big.at(3, 3) == 30);
    CHECK(big.at(20, 3) == 220);
    CHECK(big.at(12, 12) == 30);

    Homography p;
    p.m << 1.05, 0.04, 3, -0.03, 0.97, 2, 0.0002, 0.0001, 1;
    const auto smooth = [] {
        RasterImage im(128, 128, 1);
        for (int y = 0; y < 128; ++y)
            for (int x = 0; x < 128; ++x)
                im.at(x, y) = static_cast<std::uint8_t>(128 + 60 * std::sin(x / 7.0) * std::cos(y / 9.0));
        return im;
    }();
    const auto back = warp_perspective(warp_perspective(smooth, p, 140, 140), p.inverse(), 128, 128);
    BinaryMask interior(128, 128);
    fill(interior, 16, 16, 112, 112);
    CHECK(psnr(back, smooth, interior) >= 35.0);

    Homography sing;
    sing.m.setZero();
    CHECK_THROWS_AS(warp_perspective(img, sing, 10, 10), DegenerateGeometryError);

    // corners land on their targets
    const std::vector<Vec2> src{{0, 0}, {63, 0}, {63, 47}, {0, 47}};
    const std::vector<Vec2> dst{{5, 3}, {70, 8}, {66, 55}, {2, 50}};
    const auto h = homography_from_points(src, dst);
    for (int i = 0; i < 4; ++i) CHECK((h.apply(src[i]) - dst[i]).norm() < 0.5);
}

TEST_CASE("ssim") {
    Rng rng(2);
    GrayImage a(48, 40, 1);
    for (auto& v : a.data()) v = static_cast<float>(255 * uniform01(rng));
    CHECK(ssim(a, a) == 1.0);

    GrayImage b = a;
    for (auto& v : b.data()) v = std::clamp(v + static_cast<float>(40 * (uniform01(rng) - 0.5)), 0.0f, 255.0f);
    CHECK(ssim(a, b) == ssim(b, a));

    double prev = 1.0;
    for (double sigma : {5.0, 10.0, 20.0, 40.0, 80.0}) {
        Rng nr(77);
        GrayImage n = a;
        for (auto& v : n.data()) v += static_cast<float>(sigma * (uniform01(nr) - 0.5));
        const double s = ssim(a, n);
        CHECK(s < prev);
        prev = s;
    }
    CHECK_THROWS_AS(ssim(a, GrayImage(10, 10, 1)), ArgumentError);
    const RasterImage rgb(20, 20, 3, 90);
    CHECK(ssim(rgb, rgb) == 1.0);
}

#include <doctest.h>

#include "fixtures.hpp"

#include "lodtex/core/error.hpp"
#include "lodtex/core/image_io.hpp"
#include "lodtex/masks/facade_masks.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

using namespace lodtex;
using namespace lodtex::masks;
namespace fs = std::filesystem;

namespace {

BinaryMask box_mask(int w, int h, int x0, int y0, int x1, int y1) {
    BinaryMask m(w, h);
    for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) m.set(x, y);
    return m;
}

LabeledMask labeled(const BinaryMask& m, std::map<std::string, double> s) { return {m, std::move(s)}; }

fs::path write_manifest(const fs::path& dir, const nlohmann::json& j) {
    fixture::write_text(dir / "manifest.json", j.dump());
    return dir / "manifest.json";
}

}  // namespace

TEST_CASE("manifest loading") {
    const auto dir = fixture::temp_dir("masks_manifest");
    for (int i = 0; i < 3; ++i) write_mask(dir / ("m" + std::to_string(i) + ".png"), box_mask(40, 30, i, i, 20, 20));
    nlohmann::json j = {{"image", "missing.png"},
                        {"masks",
                         {{{"mask", "m0.png"}, {"scores", {{"building facade", 0.61}, {"vehicle", 0.1}}}},
                          {{"mask", "m1.png"}, {"scores", {{"building eave", 0.5}}}},
                          {{"mask", "m2.png"}, {"scores", {{"tree", 0.3}}}}}}};
    auto m = load_mask_manifest(write_manifest(dir, j));
    REQUIRE(m.masks.size() == 3);
    CHECK(m.masks[0].label_scores.at("building facade") == 0.61);
    CHECK(m.masks[1].mask.width() == 40);
    CHECK(load_mask_manifest(dir / "manifest.json", 2).masks.size() == 2);

    j["masks"][1]["mask"] = "absent.png";
    try {
        load_mask_manifest(write_manifest(dir, j));
        FAIL("expected ManifestError");
    } catch (const ManifestError& e) {
        CHECK(e.entry() == 1);
    }

    j["masks"][1]["mask"] = "m1.png";
    j["masks"][2]["scores"]["tree"] = 1.3;
    try {
        load_mask_manifest(write_manifest(dir, j));
        FAIL("expected ManifestError");
    } catch (const ManifestError& e) {
        CHECK(e.entry() == 2);
    }

    j["masks"][2]["scores"]["tree"] = 0.3;
    write_mask(dir / "m2.png", BinaryMask(41, 30));
    try {
        load_mask_manifest(write_manifest(dir, j));
        FAIL("expected ManifestError");
    } catch (const ManifestError& e) {
        CHECK(e.entry() == 2);
    }

    // the image, when present, fixes the expected size
    write_image(dir / "image.png", RasterImage(41, 30, 3));
    j["image"] = "image.png";
    try {
        load_mask_manifest(write_manifest(dir, j));
        FAIL("expected ManifestError");
    } catch (const ManifestError& e) {
        CHECK(e.entry() == 0);
    }
    CHECK_THROWS_AS(load_mask_manifest(dir / "nope.json"), ManifestError);
}

TEST_CASE("label filtering") {
    const BinaryMask m(4, 4, true);
    const std::vector<LabeledMask> in{
        labeled(m, {{"building facade", 0.6}, {"vehicle", 0.2}}),
        labeled(m, {{"building facade", 0.04}, {"vehicle", 0.02}}),
        labeled(m, {{"building eave", 0.5}, {"building facade", 0.3}}),
        labeled(m, {{"building facade", 0.4}, {"tree", 0.4}}),
        labeled(m, {{"pedestrian on the street", 0.9}}),
    };
    const auto f = filter_facade_masks(in, 0.05);
    CHECK(f.facades.size() == 1);
    CHECK(f.eaves.size() == 1);

    // order invariance
    auto rev = in;
    std::reverse(rev.begin(), rev.end());
    const auto g = filter_facade_masks(rev, 0.05);
    CHECK(g.facades.size() == f.facades.size());
    CHECK(g.eaves.size() == f.eaves.size());
}

TEST_CASE("combine and clean") {
    const int w = 260, h = 200;
    const auto a = box_mask(w, h, 30, 50, 130, 170), b = box_mask(w, h, 90, 50, 190, 170);
    const auto both = combine_and_clean({a, b}, {}, 2000, 25);
    CHECK(both == mask_or(a, b));

    const auto eave = box_mask(w, h, 0, 50, w, 70);
    const auto cut = combine_and_clean({a}, {eave}, 2000, 25);
    CHECK_FALSE(cut(50, 60));
    CHECK(cut(50, 80));

    const auto blob = box_mask(w, h, 200, 0, 250, 30);  // 1500 px
    const auto cleaned = combine_and_clean({mask_or(a, blob)}, {}, 2000, 25);
    CHECK_FALSE(cleaned(220, 10));
    CHECK(cleaned == a);

    // identity parameters leave OR minus eaves untouched
    const auto speck = box_mask(w, h, 2, 2, 4, 4);
    const auto raw = combine_and_clean({mask_or(a, speck), b}, {eave}, 0, 1);
    CHECK(raw == mask_subtract(mask_or(mask_or(a, speck), b), eave));

    // anti-monotone in min_area
    const auto big = combine_and_clean({mask_or(a, blob)}, {}, 100, 5);
    const auto small = combine_and_clean({mask_or(a, blob)}, {}, 3000, 5);
    CHECK(mask_subtract(small, big).count() == 0);

    CHECK_THROWS_AS(combine_and_clean({}, {}), EmptyMaskError);
}

TEST_CASE("apply mask") {
    RasterImage img(4, 2, 3);
    for (std::size_t i = 0; i < img.data().size(); ++i) img.data()[i] = static_cast<std::uint8_t>(10 + i);
    CHECK(apply_mask(img, BinaryMask(4, 2, true)) == img);
    CHECK(apply_mask(img, BinaryMask(4, 2, false)) == RasterImage(4, 2, 3, 0));
    const auto half = apply_mask(img, box_mask(4, 2, 0, 0, 2, 2));
    CHECK(half.at(1, 1, 2) == img.at(1, 1, 2));
    CHECK(half.at(2, 0, 0) == 0);
    CHECK_THROWS_AS(apply_mask(img, BinaryMask(3, 2)), ArgumentError);
}

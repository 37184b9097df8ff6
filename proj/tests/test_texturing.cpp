#include <doctest.h>

#include "fixtures.hpp"
#include "synthetic.hpp"

#include "lodtex/brep/obj.hpp"
#include "lodtex/core/error.hpp"
#include "lodtex/core/image_io.hpp"
#include "lodtex/texturing/texturing.hpp"

#include <fstream>
#include <sstream>

using namespace lodtex;
using namespace lodtex::texturing;

namespace {

// 10 x 6 m wall in the plane y = 6, seen from the origin.
brep::Quad3D wall_quad() { return {{Vec3(-5, 6, 0), Vec3(5, 6, 0), Vec3(5, 6, 6), Vec3(-5, 6, 6)}}; }

brep::PlaneFrame wall_frame() { return {Vec3(0, 6, 3), Vec3::UnitX(), Vec3::UnitZ(), -Vec3::UnitY()}; }

BinaryMask interior(int w, int h, int border) {
    BinaryMask m(w, h);
    for (int y = border; y < h - border; ++y)
        for (int x = border; x < w - border; ++x) m.set(x, y);
    return m;
}

int count_prefix(const std::string& text, const std::string& prefix) {
    std::istringstream in(text);
    int n = 0;
    for (std::string line; std::getline(in, line);) n += line.rfind(prefix, 0) == 0;
    return n;
}

}  // namespace

TEST_CASE("camera rays") {
    brep::CameraPose pose;
    const std::vector<double> h{-20, -10, 0, 10, 20, 25, 30, 35, 40, 45}, p{-4, -2, 0, 2, 4};
    const auto rays = camera_rays(pose, h, p);
    REQUIRE(rays.size() == 50);
    CHECK((rays[2 + 10 * 2].dir - Vec3(0, 1, 0)).norm() < 1e-12);
    CHECK(rays[0].origin.z() == doctest::Approx(1.7));
    CHECK(rays[0].origin.y() == doctest::Approx(0.01));
    for (const auto& r : rays) CHECK(r.dir.norm() == doctest::Approx(1.0));
    CHECK((world_direction(0, 0, 90) - Vec3::UnitZ()).norm() < 1e-12);
    CHECK((world_direction(90, 0, 0) - Vec3::UnitX()).norm() < 1e-12);
    CHECK((world_direction(30, 60, 0) - Vec3::UnitX()).norm() < 1e-12);
}

TEST_CASE("ray plane intersection") {
    const auto f = wall_frame();
    const auto hit = ray_plane({0, 0, 1}, {0, 1, 0}, f);
    REQUIRE(hit);
    CHECK(hit->t == doctest::Approx(6.0));
    CHECK((hit->point - Vec3(0, 6, 1)).norm() < 1e-12);
    CHECK_FALSE(ray_plane({0, 0, 1}, {1, 0, 0}, f));
    CHECK_FALSE(ray_plane({0, 0, 1}, {0, -1, 0}, f));
}

TEST_CASE("normalized facade coordinates") {
    const auto q = wall_quad();
    const auto f = wall_frame();
    CHECK((*uv_from_point(q.q[0], f, q) - Vec2(0, 0)).norm() < 1e-12);
    CHECK((*uv_from_point(q.q[2], f, q) - Vec2(1, 1)).norm() < 1e-12);
    CHECK((*uv_from_point(q.center(), f, q) - Vec2(0.5, 0.5)).norm() < 1e-12);
    CHECK((*uv_from_point(Vec3(-2.5, 6, 1.5), f, q) - Vec2(0.25, 0.25)).norm() < 1e-12);
    CHECK_FALSE(uv_from_point(Vec3(6, 6, 1), f, q));
    CHECK_FALSE(uv_from_point(Vec3(0, 6.1, 1), f, q));
    // affine in the point
    const Vec3 a(-4, 6, 1), b(3, 6, 5);
    const Vec2 mid = *uv_from_point(0.3 * a + 0.7 * b, f, q);
    CHECK((mid - (0.3 * *uv_from_point(a, f, q) + 0.7 * *uv_from_point(b, f, q))).norm() < 1e-12);
    const auto bounds = uv_bounds(f, q);
    CHECK(bounds[0] == doctest::Approx(-5.0));
    CHECK(bounds[1] == doctest::Approx(5.0));
    CHECK(bounds[2] == doctest::Approx(-3.0));
    CHECK(bounds[3] == doctest::Approx(3.0));
    CHECK((texel_point(q, 0, 0, 10, 6) - Vec3(-4.5, 6, 5.5)).norm() < 1e-12);
}

TEST_CASE("texture synthesis reproduces a rendered facade") {
    synth::FacadeRect rect;
    rect.origin = {-5, 6, 0};
    synth::Checker checker;
    synth::PanoCamera cam;
    cam.centre = {0, 0, 1.7};
    cam.heading = 20;
    const auto pano = synth::render_facade_pano(rect, checker, cam, 1024, 512, 2);
    brep::CameraPose pose;
    pose.heading = 20;
    pose.near_offset = 0;

    const auto tex = synthesize_texture(pano, pose, wall_quad(), wall_frame(), 20.0);
    REQUIRE(tex.pixels.width() == 200);
    REQUIRE(tex.pixels.height() == 120);
    const auto ref = synth::checker_texture(rect, checker, 200, 120);
    const double p = psnr(tex.pixels, ref, interior(200, 120, 2));
    MESSAGE("texture psnr " << p);
    CHECK(p >= 30.0);

    const RasterImage grey(256, 128, 3, 77);
    const auto flat = synthesize_texture(grey, pose, wall_quad(), wall_frame(), 5.0);
    CHECK(flat.pixels == RasterImage(50, 30, 3, 77));

    const auto twice = synthesize_texture(grey, pose, wall_quad(), wall_frame(), 10.0);
    CHECK(twice.pixels.width() == 100);
    CHECK(twice.pixels.height() == 60);

    auto behind = pose;
    behind.position = {0, 12, 0};
    CHECK_THROWS_AS(synthesize_texture(grey, behind, wall_quad(), wall_frame(), 5.0), DegenerateViewError);
    CHECK_THROWS_AS(synthesize_texture(grey, pose, wall_quad(), wall_frame(), 0.0), ArgumentError);
}

TEST_CASE("inward normals are flipped once") {
    brep::Mesh m;
    m.vertices = {{-1, 5, 0}, {1, 5, 0}, {1, 5, 2}, {-1, 5, 2}};
    m.faces = {{0, 1, 2}, {0, 3, 2}};
    m.face_class = {geo::SurfaceClass::WallSurface, geo::SurfaceClass::WallSurface};
    const Vec3 cam(0, 0, 1);
    const auto f = flip_inward_normals(m, cam);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(f.face_normal(i).dot(cam - f.face_centroid(i)) > 0);
    CHECK(flip_inward_normals(f, cam).faces == f.faces);
}

TEST_CASE("textured export") {
    const auto dir = fixture::temp_dir("export");
    const RasterImage tex(20, 12, 3, 90);
    const auto paths = export_textured(wall_quad(), tex, dir / "wall");
    CHECK(std::filesystem::exists(paths.obj));
    CHECK(std::filesystem::exists(paths.mtl));
    CHECK(std::filesystem::exists(paths.png));
    std::ifstream in(paths.obj);
    const std::string obj((std::istreambuf_iterator<char>(in)), {});
    CHECK(count_prefix(obj, "v ") == 4);
    CHECK(count_prefix(obj, "vt ") == 4);
    CHECK(count_prefix(obj, "f ") == 2);
    CHECK(read_image(paths.png) == tex);
    CHECK_THROWS_AS(export_textured(wall_quad(), RasterImage(), dir / "none"), ArgumentError);
}

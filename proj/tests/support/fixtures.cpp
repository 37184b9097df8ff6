#include "fixtures.hpp"

#include "synthetic.hpp"

#include "lodtex/core/image_io.hpp"
#include "lodtex/geo/utm.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace fixture {

namespace fs = std::filesystem;

namespace {

void polygon(std::ostringstream& os, const Ring3& r, const std::string& id) {
    os << "<gml:surfaceMember><gml:Polygon gml:id=\"" << id << "\"><gml:exterior><gml:LinearRing>"
       << "<gml:posList srsDimension=\"3\">";
    os << std::setprecision(15);
    for (std::size_t i = 0; i <= r.size(); ++i) {
        const Vec3& p = r[i % r.size()];
        os << (i ? " " : "") << p.x() << ' ' << p.y() << ' ' << p.z();
    }
    os << "</gml:posList></gml:LinearRing></gml:exterior></gml:Polygon></gml:surfaceMember>";
}

void multi(std::ostringstream& os, const std::vector<Ring3>& polys, const std::string& id) {
    os << "<bldg:lod3MultiSurface><gml:MultiSurface>";
    for (std::size_t i = 0; i < polys.size(); ++i) polygon(os, polys[i], id + "_p" + std::to_string(i));
    os << "</gml:MultiSurface></bldg:lod3MultiSurface>";
}

}  // namespace

std::string citygml(const std::vector<Building>& buildings, const std::string& srs) {
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<core:CityModel xmlns:core=\"http://www.opengis.net/citygml/2.0\" "
          "xmlns:bldg=\"http://www.opengis.net/citygml/building/2.0\" xmlns:gml=\"http://www.opengis.net/gml\">\n"
       << "<gml:boundedBy><gml:Envelope srsName=\"" << srs << "\" srsDimension=\"3\"/></gml:boundedBy>\n";
    for (const auto& b : buildings) {
        os << "<core:cityObjectMember><bldg:Building gml:id=\"" << b.id << "\">\n";
        for (const auto& s : b.surfaces) {
            os << "<bldg:boundedBy><bldg:" << s.type << " gml:id=\"" << s.id << "\">";
            multi(os, s.polygons, s.id);
            for (const auto& o : s.openings) {
                os << "<bldg:opening><bldg:" << o.type << " gml:id=\"" << o.id << "\">";
                multi(os, o.polygons, o.id);
                os << "</bldg:" << o.type << "></bldg:opening>";
            }
            os << "</bldg:" << s.type << "></bldg:boundedBy>\n";
        }
        os << "</bldg:Building></core:cityObjectMember>\n";
    }
    os << "</core:CityModel>\n";
    return os.str();
}

void write_text(const fs::path& p, const std::string& text) {
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    out << text;
}

Building box(const std::string& id, double x0, double y0, double x1, double y1, double z0, double z1) {
    const Vec3 a(x0, y0, 0), b(x1, y0, 0), c(x1, y1, 0), d(x0, y1, 0);
    auto at = [](const Vec3& p, double z) { return Vec3(p.x(), p.y(), z); };
    Building out;
    out.id = id;
    out.surfaces.push_back({"GroundSurface", id + "_ground", {{at(a, z0), at(d, z0), at(c, z0), at(b, z0)}}, {}});
    const std::array<std::pair<Vec3, Vec3>, 4> edges{{{a, b}, {b, c}, {c, d}, {d, a}}};
    const std::array<const char*, 4> names{"south", "east", "north", "west"};
    for (int i = 0; i < 4; ++i) {
        const auto& [p, q] = edges[i];
        out.surfaces.push_back(
            {"WallSurface", id + "_" + names[i], {{at(p, z0), at(q, z0), at(q, z1), at(p, z1)}}, {}});
    }
    out.surfaces.push_back({"RoofSurface", id + "_roof", {{at(a, z1), at(b, z1), at(c, z1), at(d, z1)}}, {}});
    return out;
}

Ring3 wall_rect(const Ring3& wall, double along, double up, double width, double height) {
    const Vec3 p = wall[0];
    const Vec3 t = (wall[1] - wall[0]).normalized();
    const Vec3 z = Vec3::UnitZ();
    const Vec3 o = p + along * t + up * z;
    return {o, o + width * t, o + width * t + height * z, o + height * z};
}

SceneInfo write_scene(const fs::path& root, const SceneSpec& spec) {
    fs::remove_all(root);
    fs::create_directories(root / "panos");
    fs::create_directories(root / "masks");
    const double x0 = spec.east - 5.0, y0 = spec.north, z0 = spec.ground;
    Building b = box("B1", x0, y0, x0 + 10.0, y0 + 8.0, z0, z0 + 6.0);
    auto& south = b.surfaces[1];
    south.openings.push_back({"Window", "B1_win1", {wall_rect(south.polygons[0], 2.0, 1.5, 2.0, 1.5)}});
    south.openings.push_back({"Door", "B1_door1", {wall_rect(south.polygons[0], 6.5, 0.0, 1.2, 2.2)}});
    write_text(root / "model.gml", citygml({b}));

    // Camera in front of the wall centre.
    const double cx = spec.east, cy = spec.north - spec.camera_distance;
    synth::FacadeRect f;
    f.origin = {x0, y0, z0};
    f.u = {1, 0, 0};
    f.width = 10.0;
    f.height = 6.0;
    synth::Checker checker;
    synth::PanoCamera cam;
    cam.centre = {cx, cy, z0 + 1.7};
    cam.heading = spec.heading;
    const auto pano = synth::render_facade_pano(f, checker, cam, spec.pano_width, spec.pano_width / 2, 2);
    lodtex::write_png(root / "panos" / "P1.png", pano);

    const auto g = lodtex::geo::utm_to_geodetic({cx, cy, 32, true});
    std::ostringstream poses;
    poses << std::setprecision(17) << "pano_id,lat,lon,heading_deg,capture_date\n"
          << "P1," << g.lat << ',' << g.lon << ',' << spec.heading << ",2024-05-01\n";
    write_text(root / "poses.csv", poses.str());

    SceneInfo info;
    info.root = root;
    info.tex_width = static_cast<int>(std::lround(10.0 * spec.px_per_m));
    info.tex_height = static_cast<int>(std::lround(6.0 * spec.px_per_m));
    info.reference = synth::checker_texture(f, checker, info.tex_width, info.tex_height);

    // Facade mask with the window and door cut out, a sky mask, and a weak facade candidate.
    const int w = info.tex_width, h = info.tex_height;
    const double sx = w / 10.0, sy = h / 6.0;
    lodtex::BinaryMask facade(w, h, true), sky(w, h), weak(w, h);
    auto cut = [&](double u0, double v0, double uw, double vh) {
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                const double u = (x + 0.5) / sx, v = 6.0 - (y + 0.5) / sy;
                if (u >= u0 && u <= u0 + uw && v >= v0 && v <= v0 + vh) facade.set(x, y, false);
            }
    };
    cut(2.0, 1.5, 2.0, 1.5);
    cut(6.5, 0.0, 1.2, 2.2);
    for (int y = 0; y < h / 10; ++y)
        for (int x = 0; x < w; ++x) sky.set(x, y);
    for (int y = h / 2; y < h; ++y)
        for (int x = 0; x < w / 3; ++x) weak.set(x, y);
    lodtex::write_mask(root / "masks" / "B1_m0.png", facade);
    lodtex::write_mask(root / "masks" / "B1_m1.png", sky);
    lodtex::write_mask(root / "masks" / "B1_m2.png", weak);
    nlohmann::json manifest = {
        {"masks",
         {{{"mask", "B1_m0.png"}, {"scores", {{"building facade", 0.82}, {"sky", 0.01}}}},
          {{"mask", "B1_m1.png"}, {"scores", {{"sky", 0.7}, {"building facade", 0.1}}}},
          {{"mask", "B1_m2.png"}, {"scores", {{"building facade", 0.03}, {"tree", 0.02}}}}}}};
    write_text(root / "masks" / "B1.json", manifest.dump(2));
    return info;
}

fs::path temp_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("lodtex_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace fixture

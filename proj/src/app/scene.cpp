#include "lodtex/app/scene.hpp"

#include "lodtex/core/error.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace lodtex::app {

namespace fs = std::filesystem;

namespace {

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(line);
    while (std::getline(is, cur, ',')) out.push_back(trim(cur));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double number(const std::string& s, const std::string& what, std::size_t line) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw ArgumentError("poses.csv line " + std::to_string(line) + ": bad " + what + " '" + s + "'");
    return v;
}

}  // namespace

std::vector<PoseRecord> read_poses_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open poses", path.string());
    std::string line;
    if (!std::getline(in, line)) throw ArgumentError("poses.csv is empty");
    const auto header = split(line);
    const std::vector<std::string> want{"pano_id", "lat", "lon", "heading_deg", "capture_date"};
    if (header != want) throw ArgumentError("poses.csv header must be pano_id,lat,lon,heading_deg,capture_date");
    std::vector<PoseRecord> out;
    std::size_t n = 1;
    while (std::getline(in, line)) {
        ++n;
        if (trim(line).empty()) continue;
        const auto f = split(line);
        if (f.size() != 5) throw ArgumentError("poses.csv line " + std::to_string(n) + ": expected 5 fields");
        if (f[0].empty()) throw ArgumentError("poses.csv line " + std::to_string(n) + ": empty pano_id");
        out.push_back({f[0], number(f[1], "lat", n), number(f[2], "lon", n), number(f[3], "heading_deg", n), f[4]});
    }
    return out;
}

void write_poses_csv(const fs::path& path, std::span<const PoseRecord> poses) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write poses", path.string());
    out << "pano_id,lat,lon,heading_deg,capture_date\n" << std::setprecision(17);
    for (const auto& p : poses)
        out << p.pano_id << ',' << p.lat << ',' << p.lon << ',' << p.heading_deg << ',' << p.capture_date << '\n';
    if (!out) throw IoError("write failed", path.string());
}

fs::path Scene::pano_path(const std::string& pano_id) const {
    for (const char* ext : {".jpg", ".jpeg", ".png"}) {
        const fs::path p = root / "panos" / (pano_id + ext);
        if (fs::exists(p)) return p;
    }
    throw IoError("no panorama image for " + pano_id, (root / "panos").string());
}

std::optional<fs::path> Scene::mask_manifest(const std::string& building_id) const {
    const fs::path p = root / "masks" / (building_id + ".json");
    if (fs::exists(p)) return p;
    return std::nullopt;
}

std::optional<fs::path> Scene::prediction(const std::string& building_id, const std::string& wall) const {
    const fs::path p = root / "predictions" / (building_id + "__" + wall + ".png");
    if (fs::exists(p)) return p;
    return std::nullopt;
}

Scene load_scene(const fs::path& root) {
    if (!fs::is_directory(root)) throw IoError("scene is not a directory", root.string());
    Scene s;
    s.root = root;
    s.model = root / "model.gml";
    if (!fs::exists(s.model)) throw IoError("scene has no model.gml", root.string());
    s.poses = read_poses_csv(root / "poses.csv");
    return s;
}

}  // namespace lodtex::app

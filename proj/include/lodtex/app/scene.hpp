#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lodtex::app {

struct PoseRecord {
    std::string pano_id;
    double lat = 0.0;
    double lon = 0.0;
    double heading_deg = 0.0;  // bearing of the panorama's centre column
    std::string capture_date;
};

/// Header `pano_id,lat,lon,heading_deg,capture_date`.
std::vector<PoseRecord> read_poses_csv(const std::filesystem::path& path);
void write_poses_csv(const std::filesystem::path& path, std::span<const PoseRecord> poses);

/// scene/{model.gml, panos/<pano_id>.{jpg,jpeg,png}, poses.csv,
/// masks/<building_id>.json, predictions/<building_id>__<wall>.png}
struct Scene {
    std::filesystem::path root;
    std::filesystem::path model;
    std::vector<PoseRecord> poses;

    std::filesystem::path pano_path(const std::string& pano_id) const;
    std::optional<std::filesystem::path> mask_manifest(const std::string& building_id) const;
    std::optional<std::filesystem::path> prediction(const std::string& building_id, const std::string& wall) const;
};

Scene load_scene(const std::filesystem::path& root);

}  // namespace lodtex::app

#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace lodtex::app {

struct PipelineConfig {
    struct Camera {
        double height_m = 1.7;
        double near_offset_m = 0.01;
    } camera;
    struct Fov {
        int horizontal_samples = 10;
        int vertical_samples = 5;
        double pitch_range_deg = 5.0;
        double sample_spacing_m = 0.5;
        /// Panoramas farther than this from a footprint are not considered.
        double max_distance_m = 60.0;
        double view_lambda = 1.0;
    } fov;
    struct Rectify {
        bool estimate_attitude = true;
        double tile_fov_deg = 90.0;
        double tile_overlap = 0.5;
        double gradient_threshold = 60.0;
    } rectify;
    struct Masks {
        double clip_threshold = 0.05;
        std::size_t min_area = 2000;
        int kernel = 25;
        std::size_t top_k = 0;  // 0 keeps every entry
    } masks;
    struct QuadFit {
        double eps_init = 0.1;
        double eps_max = 0.4;
        double eps_step = 0.02;
        int max_vertices = 10;
        double margin = 0.0;
    } quadfit;
    struct Alignment {
        double scale_min = 0.75;
        double scale_max = 1.2;
        int shift_max_px = 100;
        double coarse_scale_step = 0.05;
        int coarse_shift_step_px = 10;
        double fine_scale_step = 0.01;
        int fine_shift_step_px = 2;
    } alignment;
    struct Texture {
        double px_per_m = 50.0;
    } texture;
    struct Matching {
        double ratio = 0.75;
        double ransac_reproj_px = 3.0;
        int ransac_iterations = 2000;
        std::size_t min_inliers = 15;
    } matching;
    struct Gt {
        double group_distance_m = 0.1;
    } gt;
    struct Run {
        std::uint64_t seed = 0;
        int workers = 0;  // 0 = hardware concurrency
    } run;
};

nlohmann::json to_json(const PipelineConfig& c);

/// Overlays j on the defaults. Unknown keys and mistyped values throw ConfigError.
PipelineConfig config_from_json(const nlohmann::json& j);

/// TOML document to JSON (tables to objects, dates to strings).
nlohmann::json toml_to_json(const std::string& document, const std::string& source = "config");

/// Range checks; throws ConfigError naming the key.
void validate(const PipelineConfig& c);

/// Defaults, then the TOML file, then each JSON override in order (merge patch).
PipelineConfig load_config(const std::optional<std::filesystem::path>& file,
                           const std::vector<std::string>& json_overrides = {});

}  // namespace lodtex::app

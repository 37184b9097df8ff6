#include "lodtex/app/config.hpp"

#include "lodtex/core/error.hpp"

#include <toml.hpp>

#include <fstream>
#include <sstream>

namespace lodtex::app {

namespace {

nlohmann::json node_to_json(const toml::node& n) {
    if (const auto* t = n.as_table()) {
        nlohmann::json o = nlohmann::json::object();
        for (const auto& [k, v] : *t) o[std::string(k.str())] = node_to_json(v);
        return o;
    }
    if (const auto* a = n.as_array()) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& v : *a) arr.push_back(node_to_json(v));
        return arr;
    }
    if (const auto* s = n.as_string()) return s->get();
    if (const auto* i = n.as_integer()) return i->get();
    if (const auto* f = n.as_floating_point()) return f->get();
    if (const auto* b = n.as_boolean()) return b->get();
    std::ostringstream os;
    n.visit([&](const auto& v) { os << v; });
    return os.str();
}

// Copies `in` onto `schema`, keeping the schema's value types.
void overlay(nlohmann::json& schema, const nlohmann::json& in, const std::string& path) {
    if (!in.is_object()) throw ConfigError("config section " + (path.empty() ? "<root>" : path) + " must be a table");
    for (const auto& [k, v] : in.items()) {
        const std::string key = path.empty() ? k : path + "." + k;
        if (!schema.contains(k)) throw ConfigError("unknown config key " + key);
        auto& dst = schema[k];
        if (dst.is_object()) {
            overlay(dst, v, key);
        } else if (dst.is_boolean()) {
            if (!v.is_boolean()) throw ConfigError(key + " must be a boolean");
            dst = v;
        } else if (dst.is_number_float()) {
            if (!v.is_number()) throw ConfigError(key + " must be a number");
            dst = v.get<double>();
        } else if (dst.is_number_unsigned()) {
            if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0))
                throw ConfigError(key + " must be a non-negative integer");
            dst = v.get<std::uint64_t>();
        } else if (dst.is_number_integer()) {
            if (!v.is_number_integer()) throw ConfigError(key + " must be an integer");
            dst = v.get<std::int64_t>();
        } else {
            if (!v.is_string()) throw ConfigError(key + " must be a string");
            dst = v;
        }
    }
}

void check(bool ok, const std::string& key, const std::string& rule) {
    if (!ok) throw ConfigError(key + " " + rule);
}

}  // namespace

nlohmann::json to_json(const PipelineConfig& c) {
    return {
        {"camera", {{"height_m", c.camera.height_m}, {"near_offset_m", c.camera.near_offset_m}}},
        {"fov",
         {{"horizontal_samples", c.fov.horizontal_samples},
          {"vertical_samples", c.fov.vertical_samples},
          {"pitch_range_deg", c.fov.pitch_range_deg},
          {"sample_spacing_m", c.fov.sample_spacing_m},
          {"max_distance_m", c.fov.max_distance_m},
          {"view_lambda", c.fov.view_lambda}}},
        {"rectify",
         {{"estimate_attitude", c.rectify.estimate_attitude},
          {"tile_fov_deg", c.rectify.tile_fov_deg},
          {"tile_overlap", c.rectify.tile_overlap},
          {"gradient_threshold", c.rectify.gradient_threshold}}},
        {"masks",
         {{"clip_threshold", c.masks.clip_threshold},
          {"min_area", c.masks.min_area},
          {"kernel", c.masks.kernel},
          {"top_k", c.masks.top_k}}},
        {"quadfit",
         {{"eps_init", c.quadfit.eps_init},
          {"eps_max", c.quadfit.eps_max},
          {"eps_step", c.quadfit.eps_step},
          {"max_vertices", c.quadfit.max_vertices},
          {"margin", c.quadfit.margin}}},
        {"alignment",
         {{"scale_min", c.alignment.scale_min},
          {"scale_max", c.alignment.scale_max},
          {"shift_max_px", c.alignment.shift_max_px},
          {"coarse_scale_step", c.alignment.coarse_scale_step},
          {"coarse_shift_step_px", c.alignment.coarse_shift_step_px},
          {"fine_scale_step", c.alignment.fine_scale_step},
          {"fine_shift_step_px", c.alignment.fine_shift_step_px}}},
        {"texture", {{"px_per_m", c.texture.px_per_m}}},
        {"matching",
         {{"ratio", c.matching.ratio},
          {"ransac_reproj_px", c.matching.ransac_reproj_px},
          {"ransac_iterations", c.matching.ransac_iterations},
          {"min_inliers", c.matching.min_inliers}}},
        {"gt", {{"group_distance_m", c.gt.group_distance_m}}},
        {"run", {{"seed", c.run.seed}, {"workers", c.run.workers}}},
    };
}

PipelineConfig config_from_json(const nlohmann::json& in) {
    nlohmann::json j = to_json(PipelineConfig{});
    overlay(j, in, "");
    PipelineConfig c;
    const auto& cam = j["camera"];
    c.camera.height_m = cam["height_m"];
    c.camera.near_offset_m = cam["near_offset_m"];
    const auto& fov = j["fov"];
    c.fov.horizontal_samples = fov["horizontal_samples"];
    c.fov.vertical_samples = fov["vertical_samples"];
    c.fov.pitch_range_deg = fov["pitch_range_deg"];
    c.fov.sample_spacing_m = fov["sample_spacing_m"];
    c.fov.max_distance_m = fov["max_distance_m"];
    c.fov.view_lambda = fov["view_lambda"];
    const auto& r = j["rectify"];
    c.rectify.estimate_attitude = r["estimate_attitude"];
    c.rectify.tile_fov_deg = r["tile_fov_deg"];
    c.rectify.tile_overlap = r["tile_overlap"];
    c.rectify.gradient_threshold = r["gradient_threshold"];
    const auto& m = j["masks"];
    c.masks.clip_threshold = m["clip_threshold"];
    c.masks.min_area = m["min_area"];
    c.masks.kernel = m["kernel"];
    c.masks.top_k = m["top_k"];
    const auto& q = j["quadfit"];
    c.quadfit.eps_init = q["eps_init"];
    c.quadfit.eps_max = q["eps_max"];
    c.quadfit.eps_step = q["eps_step"];
    c.quadfit.max_vertices = q["max_vertices"];
    c.quadfit.margin = q["margin"];
    const auto& a = j["alignment"];
    c.alignment.scale_min = a["scale_min"];
    c.alignment.scale_max = a["scale_max"];
    c.alignment.shift_max_px = a["shift_max_px"];
    c.alignment.coarse_scale_step = a["coarse_scale_step"];
    c.alignment.coarse_shift_step_px = a["coarse_shift_step_px"];
    c.alignment.fine_scale_step = a["fine_scale_step"];
    c.alignment.fine_shift_step_px = a["fine_shift_step_px"];
    c.texture.px_per_m = j["texture"]["px_per_m"];
    const auto& mt = j["matching"];
    c.matching.ratio = mt["ratio"];
    c.matching.ransac_reproj_px = mt["ransac_reproj_px"];
    c.matching.ransac_iterations = mt["ransac_iterations"];
    c.matching.min_inliers = mt["min_inliers"];
    c.gt.group_distance_m = j["gt"]["group_distance_m"];
    c.run.seed = j["run"]["seed"];
    c.run.workers = j["run"]["workers"];
    return c;
}

nlohmann::json toml_to_json(const std::string& document, const std::string& source) {
    try {
        return node_to_json(toml::parse(document, source));
    } catch (const toml::parse_error& e) {
        std::ostringstream os;
        os << source << ":" << e.source().begin.line << ":" << e.source().begin.column << ": " << e.description();
        throw ConfigError(os.str());
    }
}

void validate(const PipelineConfig& c) {
    check(c.camera.height_m > 0, "camera.height_m", "must be > 0");
    check(c.camera.near_offset_m >= 0, "camera.near_offset_m", "must be >= 0");
    check(c.fov.horizontal_samples >= 2, "fov.horizontal_samples", "must be >= 2");
    check(c.fov.vertical_samples >= 1, "fov.vertical_samples", "must be >= 1");
    check(c.fov.pitch_range_deg >= 0 && c.fov.pitch_range_deg < 90, "fov.pitch_range_deg", "must be in [0, 90)");
    check(c.fov.sample_spacing_m > 0, "fov.sample_spacing_m", "must be > 0");
    check(c.fov.max_distance_m > 0, "fov.max_distance_m", "must be > 0");
    check(c.fov.view_lambda >= 0, "fov.view_lambda", "must be >= 0");
    check(c.rectify.tile_fov_deg > 0 && c.rectify.tile_fov_deg < 180, "rectify.tile_fov_deg", "must be in (0, 180)");
    check(c.rectify.tile_overlap >= 0 && c.rectify.tile_overlap < 1, "rectify.tile_overlap", "must be in [0, 1)");
    check(c.rectify.gradient_threshold > 0, "rectify.gradient_threshold", "must be > 0");
    check(c.masks.clip_threshold >= 0 && c.masks.clip_threshold <= 1, "masks.clip_threshold", "must be in [0, 1]");
    check(c.masks.kernel >= 1, "masks.kernel", "must be >= 1");
    check(c.quadfit.eps_init > 0 && c.quadfit.eps_init <= c.quadfit.eps_max, "quadfit.eps_init",
          "must be in (0, eps_max]");
    check(c.quadfit.eps_step > 0, "quadfit.eps_step", "must be > 0");
    check(c.quadfit.max_vertices >= 4, "quadfit.max_vertices", "must be >= 4");
    check(c.quadfit.margin >= 0, "quadfit.margin", "must be >= 0");
    check(c.alignment.scale_min > 0 && c.alignment.scale_min <= 1 && c.alignment.scale_max >= 1, "alignment.scale_min",
          "and scale_max must bracket 1");
    check(c.alignment.shift_max_px >= 0, "alignment.shift_max_px", "must be >= 0");
    check(c.alignment.coarse_scale_step > 0 && c.alignment.fine_scale_step > 0, "alignment.*_scale_step",
          "must be > 0");
    check(c.alignment.coarse_shift_step_px > 0 && c.alignment.fine_shift_step_px > 0, "alignment.*_shift_step_px",
          "must be > 0");
    check(c.texture.px_per_m > 0 && c.texture.px_per_m <= 1000, "texture.px_per_m", "must be in (0, 1000]");
    check(c.matching.ratio > 0 && c.matching.ratio <= 1, "matching.ratio", "must be in (0, 1]");
    check(c.matching.ransac_reproj_px > 0, "matching.ransac_reproj_px", "must be > 0");
    check(c.matching.ransac_iterations >= 1, "matching.ransac_iterations", "must be >= 1");
    check(c.matching.min_inliers >= 4, "matching.min_inliers", "must be >= 4");
    check(c.gt.group_distance_m >= 0, "gt.group_distance_m", "must be >= 0");
    check(c.run.workers >= 0, "run.workers", "must be >= 0");
}

PipelineConfig load_config(const std::optional<std::filesystem::path>& file,
                           const std::vector<std::string>& json_overrides) {
    nlohmann::json merged = nlohmann::json::object();
    if (file) {
        std::ifstream in(*file, std::ios::binary);
        if (!in) throw IoError("cannot open config", file->string());
        std::ostringstream ss;
        ss << in.rdbuf();
        merged = toml_to_json(ss.str(), file->string());
    }
    for (const auto& o : json_overrides) {
        nlohmann::json patch;
        try {
            patch = nlohmann::json::parse(o);
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError(std::string("override is not valid JSON: ") + e.what());
        }
        if (!patch.is_object()) throw ConfigError("override must be a JSON object");
        merged.merge_patch(patch);
    }
    PipelineConfig c = config_from_json(merged);
    validate(c);
    return c;
}

}  // namespace lodtex::app

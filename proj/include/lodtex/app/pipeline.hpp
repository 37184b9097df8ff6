#pragma once

#include "lodtex/app/config.hpp"
#include "lodtex/app/runlog.hpp"
#include "lodtex/app/scene.hpp"
#include "lodtex/brep/facade.hpp"
#include "lodtex/geo/citygml.hpp"
#include "lodtex/eval/report.hpp"
#include "lodtex/fov/fov.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace lodtex::app {

/// Candidate camera for a building seen from camera_xy: heading at the FOV
/// window centre, fov = window width, pitch at the facade mid-height.
/// nullopt when the camera is inside the footprint or fully occluded.
std::optional<brep::CameraPose> candidate_pose(const geo::BRepBuilding& b, const geo::Footprint2D& target,
                                               std::span<const geo::Footprint2D> neighbours, const Vec2& camera_xy,
                                               const PipelineConfig& cfg, fov::FovWindow* window = nullptr);

struct FacadeView {
    std::size_t candidate = 0;
    brep::CameraPose pose;
    brep::SimplifiedFacade facade;
    std::size_t wall_index = 0;  // into BRepBuilding::wall_surfaces()
    std::string wall;
    std::size_t hits = 0;
    std::size_t faces = 0;
};

/// Ray-cast view selection, coplanar face collection and rectangle fit.
FacadeView plan_facade_view(const geo::BRepBuilding& b, std::span<const brep::CameraPose> candidates,
                            const PipelineConfig& cfg);

struct BuildingResult {
    std::string building_id;
    /// "ok", "skipped" (no usable view) or "failed".
    std::string status = "ok";
    std::string stage;  // failing stage, empty on success
    std::string message;
    std::string pano_id;
    std::string wall;
    std::optional<eval::EvalReport> report;
};

struct PipelineSummary {
    std::vector<BuildingResult> buildings;
    std::size_t failures() const;
};

nlohmann::json to_json(const BuildingResult& r);

/// Full flow per building: footprint, FOV, ray-cast view and facade
/// selection, panorama attitude, texture synthesis, mask cleaning and
/// quadrilateral refinement, GT extraction and evaluation. Artifacts go
/// below `out`; per-building failures are recorded, not thrown.
PipelineSummary run_pipeline(const Scene& scene, const std::filesystem::path& out, const PipelineConfig& cfg,
                             RunLog& log);

}  // namespace lodtex::app

#include "lodtex/app/pipeline.hpp"

#include "lodtex/brep/facade.hpp"
#include "lodtex/core/error.hpp"
#include "lodtex/core/image_io.hpp"
#include "lodtex/core/parallel.hpp"
#include "lodtex/eval/gt_mask.hpp"
#include "lodtex/fov/fov.hpp"
#include "lodtex/geo/citygml.hpp"
#include "lodtex/geo/geojson.hpp"
#include "lodtex/geo/sampling.hpp"
#include "lodtex/geo/utm.hpp"
#include "lodtex/imageproc/contour.hpp"
#include "lodtex/imageproc/quadfit.hpp"
#include "lodtex/imageproc/warp.hpp"
#include "lodtex/masks/facade_masks.hpp"
#include "lodtex/panorama/rectify.hpp"
#include "lodtex/texturing/texturing.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>

namespace lodtex::app {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct StageFailure : Error {
    StageFailure(std::string stage_name, const std::string& what, bool skip)
        : Error(what), stage(std::move(stage_name)), skipped(skip) {}
    std::string stage;
    bool skipped;
};

// Runs fn, turning library errors into a failure tagged with the stage.
template <typename Fn>
auto in_stage(RunLog& log, const std::string& building, const std::string& stage, Fn&& fn) {
    StageTimer t(log, stage, {{"building_id", building}});
    try {
        return fn(t.extra());
    } catch (const StageFailure&) {
        throw;
    } catch (const NoVisibleFacadeError& e) {
        t.extra()["error"] = e.what();
        throw StageFailure(stage, e.what(), true);
    } catch (const FullyOccludedError& e) {
        t.extra()["error"] = e.what();
        throw StageFailure(stage, e.what(), true);
    } catch (const std::exception& e) {
        t.extra()["error"] = e.what();
        throw StageFailure(stage, e.what(), false);
    }
}

void write_json(const fs::path& p, const json& j) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IoError("cannot write", p.string());
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed", p.string());
}

std::string safe_name(std::string s) {
    for (char& c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')) c = '_';
    return s;
}

struct ViewPlan {
    std::size_t pano = 0;
    brep::CameraPose pose;  // heading = panorama centre bearing
    brep::SimplifiedFacade facade;
    std::size_t wall_index = 0;
    std::string wall;
};

std::size_t dominant_wall(const geo::BRepBuilding& b, std::span<const std::size_t> faces, std::string& name) {
    const auto walls = b.wall_surfaces();
    std::map<std::size_t, std::size_t> votes;
    for (auto f : faces) {
        if (f >= b.face_polygon.size()) continue;
        std::size_t s = b.polygons[b.face_polygon[f]].surface;
        if (geo::is_opening(b.surfaces[s].cls) && b.surfaces[s].parent >= 0)
            s = static_cast<std::size_t>(b.surfaces[s].parent);
        if (b.surfaces[s].cls == geo::SurfaceClass::WallSurface) ++votes[s];
    }
    if (votes.empty()) throw NoVisibleFacadeError("selected faces belong to no wall surface");
    std::size_t best = votes.begin()->first;
    for (const auto& [s, n] : votes)
        if (n > votes[best]) best = s;
    const auto it = std::find(walls.begin(), walls.end(), best);
    const std::size_t idx = static_cast<std::size_t>(it - walls.begin());
    name = b.surfaces[best].gml_id.empty() ? "wall" + std::to_string(idx) : safe_name(b.surfaces[best].gml_id);
    return idx;
}

}  // namespace

std::optional<brep::CameraPose> candidate_pose(const geo::BRepBuilding& b, const geo::Footprint2D& target,
                                               std::span<const geo::Footprint2D> neighbours, const Vec2& camera_xy,
                                               const PipelineConfig& cfg, fov::FovWindow* window) {
    fov::FovOptions fo;
    fo.sample_spacing_m = cfg.fov.sample_spacing_m;
    fo.camera_height_m = cfg.camera.height_m;
    fo.wall_height_m = b.height();
    fov::FovWindow w;
    try {
        w = fov::effective_fov(camera_xy, target, neighbours, fo);
    } catch (const FullyOccludedError&) {
        return std::nullopt;
    } catch (const ArgumentError&) {
        return std::nullopt;
    }
    if (window) *window = w;
    brep::CameraPose pose;
    pose.position = Vec3(camera_xy.x(), camera_xy.y(), b.min_z());
    pose.heading = wrap360(w.center());
    pose.fov = std::clamp(w.width(), 1.0, 179.0);
    pose.height = cfg.camera.height_m;
    pose.near_offset = cfg.camera.near_offset_m;
    pose.pitch = w.optimal_pitch;
    return pose;
}

FacadeView plan_facade_view(const geo::BRepBuilding& b, std::span<const brep::CameraPose> candidates,
                            const PipelineConfig& cfg) {
    const brep::Mesh mesh = brep::mesh_from_building(b);
    const brep::RayBudget budget{cfg.fov.horizontal_samples, cfg.fov.vertical_samples, cfg.fov.pitch_range_deg};
    const auto sel = brep::select_best_view(mesh, candidates, budget, cfg.fov.view_lambda);
    const auto faces = brep::collect_facade_faces(mesh, sel.hits);
    FacadeView v;
    v.candidate = sel.index;
    v.pose = candidates[sel.index];
    brep::SimplifyOptions so;
    so.camera = brep::camera_origin(v.pose);
    v.facade = brep::simplify_facade(mesh, faces, so);
    v.wall_index = dominant_wall(b, faces, v.wall);
    v.hits = sel.hits.size();
    v.faces = faces.size();
    return v;
}

std::size_t PipelineSummary::failures() const {
    return static_cast<std::size_t>(
        std::count_if(buildings.begin(), buildings.end(), [](const BuildingResult& r) { return r.status == "failed"; }));
}

json to_json(const BuildingResult& r) {
    json j = {{"building_id", r.building_id}, {"status", r.status}};
    if (!r.stage.empty()) j["stage"] = r.stage;
    if (!r.message.empty()) j["message"] = r.message;
    if (!r.pano_id.empty()) j["pano_id"] = r.pano_id;
    if (!r.wall.empty()) j["wall"] = r.wall;
    if (r.report) j["eval"] = eval::to_json(*r.report);
    return j;
}

PipelineSummary run_pipeline(const Scene& scene, const fs::path& out, const PipelineConfig& cfg, RunLog& log) {
    fs::create_directories(out / "textures");
    fs::create_directories(out / "masks");
    fs::create_directories(out / "eval");
    fs::create_directories(out / "attitude");
    log.write("config", {{"config", to_json(cfg)}, {"scene", scene.root.string()}});
    const int workers = resolve_workers(cfg.run.workers);

    // Model and footprints.
    geo::CityModel model;
    std::vector<geo::Footprint2D> footprints;
    {
        StageTimer t(log, "parse");
        model = geo::parse_citygml_file(scene.model);
        t.extra()["buildings"] = model.buildings.size();
        t.extra()["warnings"] = model.warning_counts();
    }
    if (model.buildings.empty()) throw ArgumentError("model has no buildings");
    const geo::Crs crs = model.buildings.front().crs;
    if (crs.is_geodetic()) throw CrsError("pipeline needs a projected model CRS, got " + crs.name());

    PipelineSummary summary;
    summary.buildings.resize(model.buildings.size());
    std::vector<std::optional<geo::Footprint2D>> fp(model.buildings.size());
    {
        StageTimer t(log, "footprints");
        for (std::size_t i = 0; i < model.buildings.size(); ++i) {
            summary.buildings[i].building_id = model.buildings[i].id;
            try {
                fp[i] = geo::extract_footprint(model.buildings[i]);
                geo::validate_footprint(*fp[i]);
                footprints.push_back(geo::footprint_to_geodetic(*fp[i]));
            } catch (const Error& e) {
                fp[i].reset();
                summary.buildings[i].status = "failed";
                summary.buildings[i].stage = "footprints";
                summary.buildings[i].message = e.what();
            }
        }
        std::ofstream os(out / "footprints.geojson", std::ios::binary);
        os << geo::dump_geojson(geo::to_geojson(footprints));
    }

    std::vector<Vec2> cam_xy;
    for (const auto& p : scene.poses) {
        const auto u = geo::geodetic_to_utm({p.lat, p.lon}, crs.zone);
        cam_xy.emplace_back(u.easting, u.northing);
    }

    // FOV and ray-cast view selection per building.
    std::vector<std::optional<ViewPlan>> plans(model.buildings.size());
    std::vector<fov::FovRecord> fov_rows;
    std::mutex fov_mu;
    parallel_for(model.buildings.size(), workers, [&](std::size_t i) {
        auto& res = summary.buildings[i];
        if (!fp[i]) return;
        const auto& b = model.buildings[i];
        try {
            std::vector<geo::Footprint2D> neighbours;
            for (std::size_t j = 0; j < fp.size(); ++j)
                if (j != i && fp[j]) neighbours.push_back(*fp[j]);

            std::vector<brep::CameraPose> cands;
            std::vector<std::size_t> cand_pano;
            in_stage(log, b.id, "fov", [&](json& ex) {
                for (std::size_t k = 0; k < scene.poses.size(); ++k) {
                    const auto g = geo::GeodeticPoint{scene.poses[k].lat, scene.poses[k].lon};
                    if (geo::footprint_distance_m(g, *fp[i]) > cfg.fov.max_distance_m) continue;
                    fov::FovWindow w;
                    const auto pose = candidate_pose(b, *fp[i], neighbours, cam_xy[k], cfg, &w);
                    if (!pose) continue;
                    {
                        std::lock_guard lock(fov_mu);
                        fov_rows.push_back({b.id, scene.poses[k].pano_id, w});
                    }
                    cands.push_back(*pose);
                    cand_pano.push_back(k);
                }
                ex["candidates"] = cands.size();
                if (cands.empty()) throw NoVisibleFacadeError("no panorama sees building " + b.id);
                return 0;
            });

            ViewPlan plan = in_stage(log, b.id, "view", [&](json& ex) {
                const FacadeView v = plan_facade_view(b, cands, cfg);
                ViewPlan p;
                p.pano = cand_pano[v.candidate];
                p.pose = v.pose;
                p.pose.heading = scene.poses[p.pano].heading_deg;
                p.facade = v.facade;
                p.wall_index = v.wall_index;
                p.wall = v.wall;
                ex["pano_id"] = scene.poses[p.pano].pano_id;
                ex["hits"] = v.hits;
                ex["faces"] = v.faces;
                ex["wall"] = p.wall;
                return p;
            });
            res.pano_id = scene.poses[plan.pano].pano_id;
            res.wall = plan.wall;
            plans[i] = std::move(plan);
        } catch (const StageFailure& f) {
            res.status = f.skipped ? "skipped" : "failed";
            res.stage = f.stage;
            res.message = f.what();
        }
    });
    std::sort(fov_rows.begin(), fov_rows.end(), [](const fov::FovRecord& a, const fov::FovRecord& b) {
        return std::tie(a.building_id, a.pano_id) < std::tie(b.building_id, b.pano_id);
    });
    {
        std::ofstream os(out / "fov.csv", std::ios::binary);
        fov::write_fov_csv(os, fov_rows);
    }

    // Attitude once per panorama in use.
    std::vector<std::size_t> used;
    {
        std::set<std::size_t> s;
        for (const auto& p : plans)
            if (p) s.insert(p->pano);
        used.assign(s.begin(), s.end());
    }
    std::map<std::size_t, panorama::Attitude> attitude;
    std::map<std::size_t, std::string> attitude_error;
    std::mutex att_mu;
    parallel_for(used.size(), workers, [&](std::size_t u) {
        const std::size_t k = used[u];
        const std::string& id = scene.poses[k].pano_id;
        StageTimer t(log, "rectify", {{"pano_id", id}});
        panorama::Attitude a;
        try {
            if (cfg.rectify.estimate_attitude) {
                const RasterImage pano = read_image(scene.pano_path(id));
                panorama::AttitudeOptions ao;
                ao.tile_fov_deg = cfg.rectify.tile_fov_deg;
                ao.tile_overlap = cfg.rectify.tile_overlap;
                ao.segments.gradient_threshold = cfg.rectify.gradient_threshold;
                ao.segments.seed = cfg.run.seed;
                try {
                    const auto est = panorama::estimate_attitude(pano, ao);
                    a = est.attitude;
                    t.extra()["segments"] = est.segment_count;
                    t.extra()["tiles"] = est.tiles.size();
                } catch (const InsufficientEvidenceError& e) {
                    t.extra()["warning"] = std::string("attitude left level: ") + e.what();
                }
            }
            a.heading = 0.0;
            t.extra()["pitch_deg"] = a.pitch;
            t.extra()["roll_deg"] = a.roll;
            write_json(out / "attitude" / (safe_name(id) + ".json"), panorama::attitude_sidecar(id, a));
            std::lock_guard lock(att_mu);
            attitude[k] = a;
        } catch (const std::exception& e) {
            t.extra()["error"] = e.what();
            std::lock_guard lock(att_mu);
            attitude_error[k] = e.what();
        }
    });

    // Texture, masks, evaluation.
    parallel_for(model.buildings.size(), workers, [&](std::size_t i) {
        if (!plans[i]) return;
        auto& res = summary.buildings[i];
        const auto& b = model.buildings[i];
        const ViewPlan& plan = *plans[i];
        const std::string stem = safe_name(b.id);
        try {
            if (auto it = attitude_error.find(plan.pano); it != attitude_error.end())
                throw StageFailure("rectify", it->second, false);
            const panorama::Attitude tilt = attitude.at(plan.pano);

            const texturing::FacadeTexture tex = in_stage(log, b.id, "texture", [&](json& ex) {
                const RasterImage pano = read_image(scene.pano_path(scene.poses[plan.pano].pano_id));
                auto t = texturing::synthesize_texture(pano, plan.pose, plan.facade.quad, plan.facade.frame,
                                                       cfg.texture.px_per_m, tilt);
                texturing::export_textured(t.quad, t.pixels, out / "textures" / stem);
                ex["width"] = t.pixels.width();
                ex["height"] = t.pixels.height();
                return t;
            });
            const int tw = tex.pixels.width(), th = tex.pixels.height();

            std::optional<BinaryMask> pred;
            if (auto manifest = scene.mask_manifest(b.id)) {
                BinaryMask facade = in_stage(log, b.id, "facade-mask", [&](json& ex) {
                    std::optional<std::size_t> k;
                    if (cfg.masks.top_k > 0) k = cfg.masks.top_k;
                    const auto m = masks::load_mask_manifest(*manifest, k);
                    const auto f = masks::filter_facade_masks(m.masks, cfg.masks.clip_threshold);
                    BinaryMask c = masks::combine_and_clean(f.facades, f.eaves, cfg.masks.min_area, cfg.masks.kernel);
                    if (c.width() != tw || c.height() != th) c = eval::resample_mask(c, tw, th);
                    write_mask(out / "masks" / (stem + "_facade.png"), c);
                    ex["masks"] = m.masks.size();
                    ex["facades"] = f.facades.size();
                    ex["eaves"] = f.eaves.size();
                    return c;
                });
                in_stage(log, b.id, "quadfit", [&](json& ex) {
                    imageproc::QuadFitParams qp;
                    qp.eps_init = cfg.quadfit.eps_init;
                    qp.eps_max = cfg.quadfit.eps_max;
                    qp.eps_step = cfg.quadfit.eps_step;
                    qp.max_vertices = cfg.quadfit.max_vertices;
                    qp.margin = cfg.quadfit.margin;
                    const Ring2 hull = imageproc::convex_hull_of_largest_contour(facade);
                    const auto q = imageproc::fit_quadrilateral(hull, qp);
                    const std::array<Vec2, 4> dst{Vec2(0, 0), Vec2(tw - 1, 0), Vec2(tw - 1, th - 1), Vec2(0, th - 1)};
                    const auto h = imageproc::homography_from_points(q.corners, dst);
                    write_png(out / "textures" / (stem + "_refined.png"),
                              imageproc::warp_perspective(tex.pixels, h, tw, th));
                    json corners = json::array();
                    for (const auto& c : q.corners) corners.push_back({c.x(), c.y()});
                    ex["corners"] = corners;
                    ex["iou"] = q.iou;
                    ex["eps_schedule"] = imageproc::epsilon_schedule(qp);
                    ex["eps_tried"] = q.eps_tried;
                    ex["hull_size"] = hull.size();
                    return 0;
                });
                pred = std::move(facade);
            }
            if (auto p = scene.prediction(b.id, plan.wall)) pred = read_mask(*p);

            if (pred) {
                res.report = in_stage(log, b.id, "evaluate", [&](json& ex) {
                    eval::GtOptions go;
                    go.group_distance_m = cfg.gt.group_distance_m;
                    go.camera = brep::camera_origin(plan.pose);
                    const auto gt = eval::extract_gt_mask(b, plan.wall_index, cfg.texture.px_per_m, go);
                    write_mask(out / "eval" / (stem + "_gt.png"), gt.mask);
                    eval::AlignmentParams ap{cfg.alignment.scale_min,       cfg.alignment.scale_max,
                                             cfg.alignment.shift_max_px,    cfg.alignment.coarse_scale_step,
                                             cfg.alignment.coarse_shift_step_px, cfg.alignment.fine_scale_step,
                                             cfg.alignment.fine_shift_step_px};
                    const auto r = eval::evaluate_pair(*pred, gt.mask, ap);
                    json j = eval::to_json(r);
                    j["building_id"] = b.id;
                    j["wall"] = plan.wall;
                    j["openings"] = gt.opening_count;
                    j["opening_groups"] = gt.group_count;
                    write_json(out / "eval" / (stem + ".json"), j);
                    ex["aligned_iou"] = r.aligned_iou;
                    return r;
                });
            }
        } catch (const StageFailure& f) {
            res.status = f.skipped ? "skipped" : "failed";
            res.stage = f.stage;
            res.message = f.what();
        }
    });

    std::vector<eval::BatchRow> rows;
    json all = json::array();
    for (const auto& r : summary.buildings) {
        all.push_back(to_json(r));
        if (r.report) rows.push_back({r.building_id, r.wall, *r.report});
    }
    if (!rows.empty()) {
        std::ofstream os(out / "eval" / "summary.csv", std::ios::binary);
        eval::write_batch_csv(os, rows);
    }
    write_json(out / "summary.json", {{"buildings", all}});
    log.write("summary", {{"buildings", summary.buildings.size()}, {"failures", summary.failures()}});
    return summary;
}

}  // namespace lodtex::app

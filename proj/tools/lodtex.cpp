#include "lodtex/app/config.hpp"
#include "lodtex/app/pipeline.hpp"
#include "lodtex/app/runlog.hpp"
#include "lodtex/app/scene.hpp"
#include "lodtex/core/error.hpp"
#include "lodtex/core/image_io.hpp"
#include "lodtex/eval/gt_mask.hpp"
#include "lodtex/eval/report.hpp"
#include "lodtex/fov/fov.hpp"
#include "lodtex/geo/citygml.hpp"
#include "lodtex/geo/geojson.hpp"
#include "lodtex/geo/utm.hpp"
#include "lodtex/imageproc/contour.hpp"
#include "lodtex/imageproc/quadfit.hpp"
#include "lodtex/masks/facade_masks.hpp"
#include "lodtex/matching/matching.hpp"
#include "lodtex/panorama/rectify.hpp"
#include "lodtex/texturing/texturing.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lodtex;

namespace {

struct Globals {
    std::optional<fs::path> config;
    std::vector<std::string> set;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::optional<double> px_per_m;
    std::optional<std::size_t> top_k;
    std::optional<std::size_t> min_inliers;
    std::optional<fs::path> log;
};

struct Failure : std::runtime_error {
    Failure(std::string s, const std::string& what) : std::runtime_error(what), stage(std::move(s)) {}
    std::string stage;
};

app::PipelineConfig resolve(const Globals& g) {
    json flags = json::object();
    if (g.seed) flags["run"]["seed"] = *g.seed;
    if (g.workers) flags["run"]["workers"] = *g.workers;
    if (g.px_per_m) flags["texture"]["px_per_m"] = *g.px_per_m;
    if (g.top_k) flags["masks"]["top_k"] = *g.top_k;
    if (g.min_inliers) flags["matching"]["min_inliers"] = *g.min_inliers;
    auto overrides = g.set;
    if (!flags.empty()) overrides.push_back(flags.dump());
    return app::load_config(g.config, overrides);
}

void emit(const json& j, const std::optional<fs::path>& out) {
    if (!out) {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream os(*out, std::ios::binary);
    if (!os) throw IoError("cannot write", out->string());
    os << j.dump(2) << '\n';
}

geo::CityModel load_model(const fs::path& p) { return geo::parse_citygml_file(p); }

const geo::BRepBuilding& find_building(const geo::CityModel& m, const std::string& id) {
    for (const auto& b : m.buildings)
        if (b.id == id) return b;
    throw ArgumentError("no building with id " + id);
}

imageproc::QuadFitParams quad_params(const app::PipelineConfig& c) {
    imageproc::QuadFitParams q;
    q.eps_init = c.quadfit.eps_init;
    q.eps_max = c.quadfit.eps_max;
    q.eps_step = c.quadfit.eps_step;
    q.max_vertices = c.quadfit.max_vertices;
    q.margin = c.quadfit.margin;
    return q;
}

eval::AlignmentParams align_params(const app::PipelineConfig& c) {
    return {c.alignment.scale_min,         c.alignment.scale_max,       c.alignment.shift_max_px,
            c.alignment.coarse_scale_step, c.alignment.coarse_shift_step_px, c.alignment.fine_scale_step,
            c.alignment.fine_shift_step_px};
}

std::vector<std::pair<std::string, fs::path>> images_in(const fs::path& dir) {
    std::vector<std::pair<std::string, fs::path>> out;
    if (!fs::is_directory(dir)) throw IoError("not a directory", dir.string());
    for (const auto& e : fs::directory_iterator(dir)) {
        std::string ext = e.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
        if (ext == ".png" || ext == ".jpg" || ext == ".jpeg") out.emplace_back(e.path().stem().string(), e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App cli{"Facade texturing for CityGML building models from street-level panoramas"};
    cli.require_subcommand(1);
    cli.fallthrough();
    Globals g;
    cli.add_option("--config", g.config, "TOML config file")->check(CLI::ExistingFile);
    cli.add_option("--set", g.set, "JSON object merged over the config (repeatable)")
        ->expected(1)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    cli.add_option("--seed", g.seed, "Random seed");
    cli.add_option("--workers", g.workers, "Worker threads (0 = all cores)");
    cli.add_option("--px-per-m", g.px_per_m, "Texture resolution");
    cli.add_option("--top-k", g.top_k, "Keep the first k manifest masks");
    cli.add_option("--min-inliers", g.min_inliers, "Inliers needed to assign a building id");
    cli.add_option("--log", g.log, "JSON-lines run log");

    std::function<void(app::RunLog&)> action;
    std::string stage;
    auto sub = [&](const std::string& name, const std::string& desc) {
        auto* s = cli.add_subcommand(name, desc);
        s->callback([&stage, name] { stage = name; });
        return s;
    };

    // parse
    fs::path in_gml;
    std::optional<fs::path> out_json;
    auto* parse = sub("parse", "Summarize a CityGML model");
    parse->add_option("model", in_gml)->required()->check(CLI::ExistingFile);
    parse->add_option("--out", out_json);

    // footprints
    fs::path fp_in, fp_out;
    auto* footprints = sub("footprints", "Write GeoJSON footprints (EPSG:4326)");
    footprints->add_option("model", fp_in)->required()->check(CLI::ExistingFile);
    footprints->add_option("--out", fp_out)->required();

    // fov
    fs::path fov_model, fov_poses, fov_out;
    std::optional<std::string> fov_building;
    auto* fovc = sub("fov", "Effective field of view of buildings from each panorama");
    fovc->add_option("--model", fov_model)->required()->check(CLI::ExistingFile);
    fovc->add_option("--poses", fov_poses)->required()->check(CLI::ExistingFile);
    fovc->add_option("--building", fov_building);
    fovc->add_option("--out", fov_out)->required();

    // rectify
    fs::path rect_in, rect_out;
    std::optional<double> rect_pitch, rect_roll;
    std::optional<fs::path> rect_sidecar;
    auto* rect = sub("rectify", "Level a panorama (estimated or given pitch/roll)");
    rect->add_option("pano", rect_in)->required()->check(CLI::ExistingFile);
    rect->add_option("--out", rect_out)->required();
    auto* pitch_opt = rect->add_option("--pitch", rect_pitch, "Known pitch, degrees");
    auto* roll_opt = rect->add_option("--roll", rect_roll, "Known roll, degrees");
    pitch_opt->needs(roll_opt);
    roll_opt->needs(pitch_opt);
    rect->add_option("--sidecar", rect_sidecar, "Attitude JSON output");

    // stitch
    fs::path st_ref, st_src, st_out;
    auto* stitch = sub("stitch", "Stitch one image onto a reference");
    stitch->add_option("reference", st_ref)->required()->check(CLI::ExistingFile);
    stitch->add_option("source", st_src)->required()->check(CLI::ExistingFile);
    stitch->add_option("--out", st_out)->required();

    // facade-mask
    fs::path fm_in, fm_out;
    auto* fmask = sub("facade-mask", "Filter, combine and clean candidate masks");
    fmask->add_option("manifest", fm_in)->required()->check(CLI::ExistingFile);
    fmask->add_option("--out", fm_out)->required();

    // quadfit
    fs::path qf_in;
    std::optional<fs::path> qf_out;
    auto* quad = sub("quadfit", "Fit an IoU-maximizing quadrilateral to a mask");
    quad->add_option("mask", qf_in)->required()->check(CLI::ExistingFile);
    quad->add_option("--out", qf_out);

    // texture
    fs::path tx_model, tx_pano, tx_out;
    std::string tx_building;
    double tx_lat = 0, tx_lon = 0, tx_heading = 0;
    std::optional<double> tx_pitch, tx_roll;
    auto* tex = sub("texture", "Texture one facade of a building from one panorama");
    tex->add_option("--model", tx_model)->required()->check(CLI::ExistingFile);
    tex->add_option("--building", tx_building)->required();
    tex->add_option("--pano", tx_pano)->required()->check(CLI::ExistingFile);
    tex->add_option("--lat", tx_lat)->required();
    tex->add_option("--lon", tx_lon)->required();
    tex->add_option("--heading", tx_heading, "Bearing of the panorama centre column")->required();
    auto* tp = tex->add_option("--pitch", tx_pitch);
    auto* tr = tex->add_option("--roll", tx_roll);
    tp->needs(tr);
    tr->needs(tp);
    tex->add_option("--out", tx_out, "Output prefix (.obj/.mtl/.png)")->required();

    // associate-ids
    fs::path as_labeled, as_tiles, as_out;
    auto* assoc = sub("associate-ids", "Assign building ids to tiles by keypoint matching");
    assoc->add_option("--labeled", as_labeled, "Directory of <building_id>.png|jpg")->required();
    assoc->add_option("--tiles", as_tiles, "Directory of tiles")->required();
    assoc->add_option("--out", as_out)->required();

    // gt-extract
    fs::path gt_model, gt_out;
    std::string gt_building;
    std::size_t gt_wall = 0;
    auto* gtx = sub("gt-extract", "Ground-truth facade mask from an LoD3 wall");
    gtx->add_option("model", gt_model)->required()->check(CLI::ExistingFile);
    gtx->add_option("--building", gt_building)->required();
    gtx->add_option("--wall", gt_wall, "Index among the building's wall surfaces");
    gtx->add_option("--out", gt_out)->required();

    // evaluate
    fs::path ev_pred, ev_gt;
    std::optional<fs::path> ev_out;
    auto* evc = sub("evaluate", "Score a predicted mask against GT");
    evc->add_option("--pred", ev_pred)->required()->check(CLI::ExistingFile);
    evc->add_option("--gt", ev_gt)->required()->check(CLI::ExistingFile);
    evc->add_option("--out", ev_out);

    // pipeline
    fs::path pl_scene, pl_out;
    auto* pipe = sub("pipeline", "Run the full flow over a scene directory");
    pipe->add_option("--scene", pl_scene)->required()->check(CLI::ExistingDirectory);
    pipe->add_option("--out", pl_out, "Output directory (default <scene>/out)");

    try {
        cli.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return cli.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return cli.exit(e);
    } catch (const CLI::ParseError& e) {
        cli.exit(e);
        return 2;
    }

    app::PipelineConfig cfg;
    try {
        cfg = resolve(g);
    } catch (const Error& e) {
        std::cerr << "error [config]: " << e.what() << '\n';
        return 2;
    }

    try {
        if (stage == "pipeline" && pl_out.empty()) pl_out = pl_scene / "out";
        if (stage == "pipeline") fs::create_directories(pl_out);
        app::RunLog log = g.log ? app::RunLog(*g.log)
                                : (stage == "pipeline" ? app::RunLog(pl_out / "run.jsonl") : app::RunLog());
        log.write("start", {{"command", stage}, {"config", app::to_json(cfg)}});
        int code = 0;
        {
            app::StageTimer timer(log, stage);
            auto& ex = timer.extra();
            if (stage == "parse") {
                const auto m = load_model(in_gml);
                json bs = json::array();
                for (const auto& b : m.buildings) {
                    std::map<std::string, std::size_t> cls;
                    for (const auto& s : b.surfaces) ++cls[std::string(geo::to_string(s.cls))];
                    bs.push_back({{"id", b.id},
                                  {"crs", b.crs.name()},
                                  {"vertices", b.vertices.size()},
                                  {"faces", b.faces.size()},
                                  {"surfaces", cls},
                                  {"walls", b.wall_surfaces().size()},
                                  {"height_m", b.height()}});
                }
                emit({{"buildings", bs}, {"warnings", m.warning_counts()}}, out_json);
                ex["buildings"] = m.buildings.size();
            } else if (stage == "footprints") {
                const auto m = load_model(fp_in);
                std::vector<geo::Footprint2D> fps;
                for (const auto& b : m.buildings) {
                    auto f = geo::extract_footprint(b);
                    geo::validate_footprint(f);
                    fps.push_back(geo::footprint_to_geodetic(f));
                }
                std::ofstream os(fp_out, std::ios::binary);
                if (!os) throw IoError("cannot write", fp_out.string());
                os << geo::dump_geojson(geo::to_geojson(fps));
                ex["footprints"] = fps.size();
            } else if (stage == "fov") {
                const auto m = load_model(fov_model);
                const auto poses = app::read_poses_csv(fov_poses);
                std::vector<geo::Footprint2D> fps;
                for (const auto& b : m.buildings) fps.push_back(geo::extract_footprint(b));
                std::vector<fov::FovRecord> rows;
                for (std::size_t i = 0; i < m.buildings.size(); ++i) {
                    if (fov_building && m.buildings[i].id != *fov_building) continue;
                    std::vector<geo::Footprint2D> nb;
                    for (std::size_t j = 0; j < fps.size(); ++j)
                        if (j != i) nb.push_back(fps[j]);
                    for (const auto& p : poses) {
                        const auto u = geo::geodetic_to_utm({p.lat, p.lon}, fps[i].crs.zone);
                        fov::FovWindow w;
                        if (app::candidate_pose(m.buildings[i], fps[i], nb, Vec2(u.easting, u.northing), cfg, &w))
                            rows.push_back({m.buildings[i].id, p.pano_id, w});
                    }
                }
                std::ofstream os(fov_out, std::ios::binary);
                fov::write_fov_csv(os, rows);
                ex["rows"] = rows.size();
            } else if (stage == "rectify") {
                const RasterImage pano = read_image(rect_in);
                if (auto w = panorama::equirect_warning(pano)) std::cerr << "warning: " << *w << '\n';
                panorama::Attitude a;
                if (rect_pitch) {
                    a.pitch = *rect_pitch;
                    a.roll = *rect_roll;
                } else {
                    panorama::AttitudeOptions ao;
                    ao.tile_fov_deg = cfg.rectify.tile_fov_deg;
                    ao.tile_overlap = cfg.rectify.tile_overlap;
                    ao.segments.gradient_threshold = cfg.rectify.gradient_threshold;
                    ao.segments.seed = cfg.run.seed;
                    const auto est = panorama::estimate_attitude(pano, ao);
                    a = est.attitude;
                    a.heading = 0.0;
                    ex["segments"] = est.segment_count;
                }
                write_image(rect_out, panorama::rectify(pano, a));
                ex["pitch_deg"] = a.pitch;
                ex["roll_deg"] = a.roll;
                if (rect_sidecar) emit(panorama::attitude_sidecar(rect_in.stem().string(), a), rect_sidecar);
            } else if (stage == "stitch") {
                matching::StitchOptions so;
                so.ratio = cfg.matching.ratio;
                so.ransac = {cfg.matching.ransac_reproj_px, cfg.matching.ransac_iterations, cfg.run.seed};
                const auto r = matching::stitch_pair(read_image(st_ref), read_image(st_src), so);
                write_image(st_out, r.result.image);
                ex["matches"] = r.matches;
                ex["inliers"] = r.inliers;
            } else if (stage == "facade-mask") {
                std::optional<std::size_t> k;
                if (cfg.masks.top_k > 0) k = cfg.masks.top_k;
                const auto m = masks::load_mask_manifest(fm_in, k);
                const auto f = masks::filter_facade_masks(m.masks, cfg.masks.clip_threshold);
                write_mask(fm_out, masks::combine_and_clean(f.facades, f.eaves, cfg.masks.min_area, cfg.masks.kernel));
                ex["masks"] = m.masks.size();
                ex["facades"] = f.facades.size();
                ex["eaves"] = f.eaves.size();
            } else if (stage == "quadfit") {
                const BinaryMask mask = read_mask(qf_in);
                const auto hull = imageproc::convex_hull_of_largest_contour(mask);
                const auto q = imageproc::fit_quadrilateral(hull, quad_params(cfg));
                json corners = json::array();
                for (const auto& c : q.corners) corners.push_back({c.x(), c.y()});
                emit({{"corners", corners}, {"iou", q.iou}}, qf_out);
                ex["corners"] = corners;
                ex["iou"] = q.iou;
                ex["eps_schedule"] = imageproc::epsilon_schedule(quad_params(cfg));
                ex["eps_tried"] = q.eps_tried;
                ex["hull_size"] = hull.size();
            } else if (stage == "texture") {
                const auto m = load_model(tx_model);
                const auto& b = find_building(m, tx_building);
                std::vector<geo::Footprint2D> nb;
                geo::Footprint2D target;
                for (const auto& o : m.buildings) {
                    auto f = geo::extract_footprint(o);
                    if (o.id == b.id)
                        target = f;
                    else
                        nb.push_back(f);
                }
                const auto u = geo::geodetic_to_utm({tx_lat, tx_lon}, target.crs.zone);
                const auto pose = app::candidate_pose(b, target, nb, Vec2(u.easting, u.northing), cfg);
                if (!pose) throw NoVisibleFacadeError("building " + b.id + " is not visible from the panorama");
                const auto v = app::plan_facade_view(b, std::span(&*pose, 1), cfg);
                brep::CameraPose p = v.pose;
                p.heading = tx_heading;
                const RasterImage pano = read_image(tx_pano);
                panorama::Attitude tilt;
                if (tx_pitch) {
                    tilt.pitch = *tx_pitch;
                    tilt.roll = *tx_roll;
                }
                const auto t = texturing::synthesize_texture(pano, p, v.facade.quad, v.facade.frame,
                                                             cfg.texture.px_per_m, tilt);
                texturing::export_textured(t.quad, t.pixels, tx_out);
                ex["wall"] = v.wall;
                ex["width"] = t.pixels.width();
                ex["height"] = t.pixels.height();
            } else if (stage == "associate-ids") {
                std::vector<matching::LabeledImage> labeled;
                for (const auto& [id, p] : images_in(as_labeled)) labeled.push_back({id, read_image(p)});
                std::vector<std::string> names;
                std::vector<RasterImage> tiles;
                for (const auto& [id, p] : images_in(as_tiles)) {
                    names.push_back(p.filename().string());
                    tiles.push_back(read_image(p));
                }
                matching::AssociateOptions ao;
                ao.match.ratio = cfg.matching.ratio;
                ao.match.ransac = {cfg.matching.ransac_reproj_px, cfg.matching.ransac_iterations, cfg.run.seed};
                ao.min_inliers = cfg.matching.min_inliers;
                const auto rows = matching::associate_ids(labeled, tiles, ao);
                std::ofstream os(as_out, std::ios::binary);
                matching::write_assignments_csv(os, names, rows);
                ex["tiles"] = tiles.size();
            } else if (stage == "gt-extract") {
                const auto m = load_model(gt_model);
                eval::GtOptions go;
                go.group_distance_m = cfg.gt.group_distance_m;
                const auto gt = eval::extract_gt_mask(find_building(m, gt_building), gt_wall, cfg.texture.px_per_m, go);
                write_mask(gt_out, gt.mask);
                ex["width"] = gt.mask.width();
                ex["height"] = gt.mask.height();
                ex["openings"] = gt.opening_count;
                ex["groups"] = gt.group_count;
            } else if (stage == "evaluate") {
                const auto r = eval::evaluate_pair(read_mask(ev_pred), read_mask(ev_gt), align_params(cfg));
                emit(eval::to_json(r), ev_out);
                ex["aligned_iou"] = r.aligned_iou;
            } else if (stage == "pipeline") {
                const auto scene = app::load_scene(pl_scene);
                const auto summary = app::run_pipeline(scene, pl_out, cfg, log);
                for (const auto& r : summary.buildings)
                    if (r.status == "failed") {
                        std::cerr << "error [" << r.stage << "] building " << r.building_id << ": " << r.message
                                  << '\n';
                        code = 1;
                    }
                ex["failures"] = summary.failures();
            }
        }
        return code;
    } catch (const std::exception& e) {
        std::cerr << "error [" << stage << "]: " << e.what() << '\n';
        return 1;
    }
}

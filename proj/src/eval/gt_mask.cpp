#include "lodtex/eval/gt_mask.hpp"

#include "lodtex/core/error.hpp"
#include "lodtex/imageproc/morphology.hpp"
#include "lodtex/imageproc/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lodtex::eval {

namespace {

std::size_t find(std::vector<std::size_t>& parent, std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
}

Vec3 newell_normal(const std::vector<Vec3>& ring) {
    Vec3 n = Vec3::Zero();
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const Vec3& a = ring[i];
        const Vec3& b = ring[(i + 1) % ring.size()];
        n += Vec3((a.y() - b.y()) * (a.z() + b.z()), (a.z() - b.z()) * (a.x() + b.x()), (a.x() - b.x()) * (a.y() + b.y()));
    }
    return n;
}

}  // namespace

std::vector<std::size_t> group_openings(const std::vector<Ring2>& hulls, double threshold) {
    const std::size_t n = hulls.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (polygon_polygon_distance(hulls[i], hulls[j]) < threshold) {
                const std::size_t a = find(parent, i), b = find(parent, j);
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
    std::vector<std::size_t> label(n), root_label(n, n);
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(parent, i);
        if (root_label[r] == n) root_label[r] = next++;
        label[i] = root_label[r];
    }
    return label;
}

GtFacadeMask extract_gt_mask(const geo::BRepBuilding& b, std::size_t wall_index, double px_per_m,
                             const GtOptions& opt) {
    if (!(px_per_m > 0)) throw ArgumentError("px_per_m must be positive");
    const auto walls = b.wall_surfaces();
    if (wall_index >= walls.size())
        throw ArgumentError("building " + b.id + " has " + std::to_string(walls.size()) + " walls, index " +
                            std::to_string(wall_index) + " requested");
    const auto& wall = b.surfaces[walls[wall_index]];

    std::vector<std::vector<Vec3>> wall_rings;
    std::vector<Vec3> pts;
    Vec3 normal = Vec3::Zero();
    for (auto pi : wall.polygons) {
        wall_rings.push_back(b.polygon_points(pi));
        pts.insert(pts.end(), wall_rings.back().begin(), wall_rings.back().end());
        normal += newell_normal(wall_rings.back());
    }
    if (pts.size() < 3) throw DegenerateGeometryError("wall " + wall.gml_id + " has fewer than 3 vertices");

    std::optional<Vec3> hint = opt.camera;
    Vec3 centroid = Vec3::Zero();
    for (const auto& p : pts) centroid += p;
    centroid /= static_cast<double>(pts.size());
    if (!hint && normal.norm() > 0) hint = centroid + normal.normalized();

    const brep::SimplifiedFacade rect = brep::fit_facade_rectangle(pts, hint);
    GtFacadeMask gt;
    gt.frame = rect.frame;
    gt.quad = rect.quad;
    gt.px_per_m = px_per_m;

    const double width = rect.quad.width(), height = rect.quad.height();
    const int w = std::max(1, static_cast<int>(std::lround(width * px_per_m)));
    const int h = std::max(1, static_cast<int>(std::lround(height * px_per_m)));
    const Vec3 q1 = rect.quad.q[0];
    auto to_plane = [&](const std::vector<Vec3>& ring) {
        Ring2 r;
        for (const auto& p : ring) r.emplace_back((p - q1).dot(gt.frame.u), (p - q1).dot(gt.frame.v));
        return r;
    };
    const double sx = w / width, sy = h / height;
    Mat3 t;
    t << sx, 0, 0, 0, -sy, height * sy, 0, 0, 1;

    BinaryMask facade(w, h);
    for (const auto& r : wall_rings) facade = mask_or(facade, imageproc::rasterize_polygon(to_plane(r), w, h, t));

    std::vector<std::vector<Ring2>> opening_rings;
    std::vector<Ring2> hulls;
    for (auto oi : b.openings_of(walls[wall_index])) {
        std::vector<Ring2> rings;
        Ring2 all;
        for (auto pi : b.surfaces[oi].polygons) {
            rings.push_back(to_plane(b.polygon_points(pi)));
            all.insert(all.end(), rings.back().begin(), rings.back().end());
        }
        if (all.empty()) continue;
        opening_rings.push_back(std::move(rings));
        hulls.push_back(convex_hull(all));
    }
    gt.opening_count = hulls.size();
    const auto label = group_openings(hulls, opt.group_distance_m);
    gt.group_count = label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;

    const int k = std::max(1, static_cast<int>(std::lround(opt.group_distance_m * px_per_m)));
    gt.openings = BinaryMask(w, h);
    for (std::size_t g = 0; g < gt.group_count; ++g) {
        BinaryMask region(w, h);
        std::size_t members = 0;
        for (std::size_t i = 0; i < hulls.size(); ++i) {
            if (label[i] != g) continue;
            ++members;
            for (const auto& r : opening_rings[i]) region = mask_or(region, imageproc::rasterize_polygon(r, w, h, t));
        }
        if (members > 1) region = imageproc::morphology(region, imageproc::MorphOp::Close, k, k);
        gt.openings = mask_or(gt.openings, region);
    }
    gt.mask = mask_subtract(facade, gt.openings);
    return gt;
}

}  // namespace lodtex::eval

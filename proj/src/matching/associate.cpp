#include "lodtex/matching/matching.hpp"

#include "lodtex/core/error.hpp"

namespace lodtex::matching {

namespace {

std::size_t inliers_between(const std::vector<Keypoint>& tile, const std::vector<Keypoint>& ref,
                            const StitchOptions& opt) {
    const MatchSet m = match_ratio(tile, ref, opt.ratio);
    if (m.pairs.size() < 4) return 0;
    std::vector<Vec2> src, dst;
    for (const auto& p : m.pairs) {
        src.emplace_back(tile[p.a].x, tile[p.a].y);
        dst.emplace_back(ref[p.b].x, ref[p.b].y);
    }
    try {
        return ransac_homography(src, dst, opt.ransac).inlier_count;
    } catch (const Error&) {
        return 0;
    }
}

}  // namespace

std::vector<Assignment> associate_keypoints(const std::vector<std::pair<std::string, std::vector<Keypoint>>>& labeled,
                                            const std::vector<std::vector<Keypoint>>& tiles,
                                            const AssociateOptions& opt) {
    if (opt.min_inliers < 4) throw ArgumentError("min_inliers must be at least 4");
    std::vector<Assignment> out;
    for (const auto& t : tiles) {
        Assignment a;
        bool tie = false;
        const std::string* best = nullptr;
        for (const auto& [id, kps] : labeled) {
            const std::size_t n = inliers_between(t, kps, opt.match);
            if (n > a.inliers) {
                a.inliers = n;
                best = &id;
                tie = false;
            } else if (n == a.inliers && n > 0) {
                tie = true;
            }
        }
        if (best && !tie && a.inliers >= opt.min_inliers) a.building_id = *best;
        out.push_back(std::move(a));
    }
    return out;
}

std::vector<Assignment> associate_ids(const std::vector<LabeledImage>& labeled, const std::vector<RasterImage>& tiles,
                                      const AssociateOptions& opt) {
    std::vector<std::pair<std::string, std::vector<Keypoint>>> lk;
    for (const auto& l : labeled) lk.emplace_back(l.id, detect_and_describe(l.image, opt.match.detector));
    std::vector<std::vector<Keypoint>> tk;
    for (const auto& t : tiles) tk.push_back(detect_and_describe(t, opt.match.detector));
    return associate_keypoints(lk, tk, opt);
}

void write_assignments_csv(std::ostream& out, const std::vector<std::string>& tile_names,
                           const std::vector<Assignment>& rows) {
    out << "tile,building_id,inliers\n";
    for (std::size_t i = 0; i < rows.size(); ++i)
        out << tile_names.at(i) << ',' << rows[i].building_id.value_or("") << ',' << rows[i].inliers << '\n';
}

}  // namespace lodtex::matching

#include "lodtex/matching/matching.hpp"

#include "lodtex/core/error.hpp"
#include "lodtex/core/random.hpp"

#include <array>
#include <cmath>

namespace lodtex::matching {

std::pair<double, double> reprojection_errors(const imageproc::Homography& h, const Vec2& src, const Vec2& dst) {
    const double fwd = (h.apply(src) - dst).norm();
    const double bwd = (h.inverse().apply(dst) - src).norm();
    return {fwd, bwd};
}

namespace {

std::vector<bool> score(const imageproc::Homography& h, std::span<const Vec2> src, std::span<const Vec2> dst,
                        double tol, std::size_t& count) {
    std::vector<bool> flags(src.size(), false);
    count = 0;
    imageproc::Homography inv;
    try {
        inv = h.inverse();
    } catch (const DegenerateGeometryError&) {
        return flags;
    }
    for (std::size_t i = 0; i < src.size(); ++i) {
        const double fwd = (h.apply(src[i]) - dst[i]).norm();
        const double bwd = (inv.apply(dst[i]) - src[i]).norm();
        if (fwd < tol && bwd < tol) {
            flags[i] = true;
            ++count;
        }
    }
    return flags;
}

}  // namespace

RansacResult ransac_homography(std::span<const Vec2> src, std::span<const Vec2> dst, const RansacParams& p) {
    if (src.size() != dst.size()) throw ArgumentError("ransac needs paired points");
    if (src.size() < 4) throw InsufficientMatchesError("ransac needs at least 4 correspondences, got " +
                                                       std::to_string(src.size()));
    Rng rng(p.seed);
    const std::size_t n = src.size();
    RansacResult best;
    for (int it = 0; it < p.iterations; ++it) {
        std::array<std::size_t, 4> idx{};
        for (int k = 0; k < 4; ++k) {
            bool fresh;
            do {
                idx[k] = uniform_index(rng, n);
                fresh = true;
                for (int j = 0; j < k; ++j) fresh = fresh && idx[j] != idx[k];
            } while (!fresh);
        }
        std::array<Vec2, 4> s, d;
        for (int k = 0; k < 4; ++k) {
            s[k] = src[idx[k]];
            d[k] = dst[idx[k]];
        }
        imageproc::Homography h;
        try {
            h = imageproc::homography_from_points(s, d);
        } catch (const DegenerateGeometryError&) {
            continue;
        }
        if (!h.m.allFinite()) continue;
        std::size_t count = 0;
        auto flags = score(h, src, dst, p.reproj_px, count);
        if (count > best.inlier_count) {
            best.h = h;
            best.inliers = std::move(flags);
            best.inlier_count = count;
        }
    }
    if (best.inlier_count < 4) throw NoModelError("no homography with at least 4 inliers");

    std::vector<Vec2> is, id;
    for (std::size_t i = 0; i < n; ++i)
        if (best.inliers[i]) {
            is.push_back(src[i]);
            id.push_back(dst[i]);
        }
    try {
        const auto refit = imageproc::homography_dlt(is, id);
        std::size_t count = 0;
        auto flags = score(refit, src, dst, p.reproj_px, count);
        if (count >= best.inlier_count) {
            best.h = refit;
            best.inliers = std::move(flags);
            best.inlier_count = count;
        }
    } catch (const DegenerateGeometryError&) {
    }
    return best;
}

}  // namespace lodtex::matching

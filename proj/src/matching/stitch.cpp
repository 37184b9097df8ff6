#include "lodtex/matching/matching.hpp"

#include "lodtex/core/error.hpp"

#include <algorithm>
#include <cmath>

namespace lodtex::matching {

Stitched warp_and_blend(const RasterImage& reference, const RasterImage& source, const imageproc::Homography& h) {
    if (reference.channels() != source.channels()) throw ArgumentError("reference and source channel counts differ");
    const imageproc::Homography inv = h.inverse();
    const int rw = reference.width(), rh = reference.height(), sw = source.width(), sh = source.height();

    double x0 = 0, y0 = 0, x1 = rw - 1, y1 = rh - 1;
    for (const Vec2& c : {Vec2(0, 0), Vec2(sw - 1, 0), Vec2(sw - 1, sh - 1), Vec2(0, sh - 1)}) {
        const Vec2 q = h.apply(c);
        x0 = std::min(x0, q.x());
        y0 = std::min(y0, q.y());
        x1 = std::max(x1, q.x());
        y1 = std::max(y1, q.y());
    }
    Stitched out;
    out.offset_x = static_cast<int>(std::floor(x0 + 1e-9));
    out.offset_y = static_cast<int>(std::floor(y0 + 1e-9));
    const int cw = static_cast<int>(std::ceil(x1 - 1e-9)) - out.offset_x + 1;
    const int ch = static_cast<int>(std::ceil(y1 - 1e-9)) - out.offset_y + 1;
    const int nc = reference.channels();
    out.image = RasterImage(cw, ch, nc, 0);

    for (int y = 0; y < ch; ++y)
        for (int x = 0; x < cw; ++x) {
            const int rx = x + out.offset_x, ry = y + out.offset_y;
            double wr = 0.0, ws = 0.0;
            if (rx >= 0 && ry >= 0 && rx < rw && ry < rh)
                wr = std::min({rx + 1.0, static_cast<double>(rw - rx), ry + 1.0, static_cast<double>(rh - ry)});
            const Vec2 s = inv.apply(Vec2(rx, ry));
            if (s.x() >= -0.5 && s.y() >= -0.5 && s.x() <= sw - 0.5 && s.y() <= sh - 0.5)
                ws = std::max(1e-6, std::min({s.x() + 1.0, sw - s.x(), s.y() + 1.0, sh - s.y()}));
            if (wr == 0.0 && ws == 0.0) continue;
            for (int c = 0; c < nc; ++c) {
                const double vr = wr > 0 ? reference.at(rx, ry, c) : 0.0;
                const double vs = ws > 0 ? sample_bilinear(source, s.x(), s.y(), c) : 0.0;
                out.image.at(x, y, c) = static_cast<std::uint8_t>(std::lround((wr * vr + ws * vs) / (wr + ws)));
            }
        }
    return out;
}

StitchPair stitch_pair(const RasterImage& reference, const RasterImage& source, const StitchOptions& opt) {
    const auto ka = detect_and_describe(source, opt.detector);
    const auto kb = detect_and_describe(reference, opt.detector);
    const MatchSet m = match_ratio(ka, kb, opt.ratio);
    std::vector<Vec2> src, dst;
    for (const auto& p : m.pairs) {
        src.emplace_back(ka[p.a].x, ka[p.a].y);
        dst.emplace_back(kb[p.b].x, kb[p.b].y);
    }
    const auto r = ransac_homography(src, dst, opt.ransac);
    return {warp_and_blend(reference, source, r.h), r.h, m.pairs.size(), r.inlier_count};
}

}  // namespace lodtex::matching

#include "lodtex/imageproc/warp.hpp"

#include <cmath>

namespace lodtex::imageproc {

RasterImage warp_perspective(const RasterImage& img, const Homography& p, int out_w, int out_h) {
    const Homography inv = p.inverse();
    RasterImage out(out_w, out_h, img.channels(), 0);
    const double maxx = img.width() - 0.5, maxy = img.height() - 0.5;
    for (int y = 0; y < out_h; ++y)
        for (int x = 0; x < out_w; ++x) {
            const Vec2 s = inv.apply(Vec2(x, y));
            if (!(s.x() >= -0.5 && s.y() >= -0.5 && s.x() <= maxx && s.y() <= maxy)) continue;
            for (int c = 0; c < img.channels(); ++c)
                out.at(x, y, c) = static_cast<std::uint8_t>(std::lround(sample_bilinear(img, s.x(), s.y(), c)));
        }
    return out;
}

BinaryMask warp_perspective(const BinaryMask& mask, const Homography& p, int out_w, int out_h) {
    const Homography inv = p.inverse();
    BinaryMask out(out_w, out_h);
    for (int y = 0; y < out_h; ++y)
        for (int x = 0; x < out_w; ++x) {
            const Vec2 s = inv.apply(Vec2(x, y));
            const long sx = std::lround(s.x()), sy = std::lround(s.y());
            if (sx < 0 || sy < 0 || sx >= mask.width() || sy >= mask.height()) continue;
            if (mask(static_cast<int>(sx), static_cast<int>(sy))) out.set(x, y);
        }
    return out;
}

}  // namespace lodtex::imageproc

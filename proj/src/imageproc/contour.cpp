#include "lodtex/imageproc/contour.hpp"

#include "lodtex/core/error.hpp"
#include "lodtex/imageproc/components.hpp"

#include <array>
#include <cmath>

namespace lodtex::imageproc {

namespace {

// Clockwise on screen (y down), starting east.
constexpr std::array<std::array<int, 2>, 8> kDirs{{{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}}};

Ring2 trace(const Image<int>& labels, int label, int sx, int sy) {
    auto inside = [&](int x, int y) {
        return x >= 0 && y >= 0 && x < labels.width() && y < labels.height() && labels.at(x, y) == label;
    };
    Ring2 pts{Vec2(sx, sy)};
    int cx = sx, cy = sy;
    int back = 4;  // west of the first pixel is background
    int first_dir = -1;
    for (;;) {
        int found = -1;
        for (int k = 1; k <= 8; ++k) {
            const int d = (back + k) % 8;
            if (inside(cx + kDirs[d][0], cy + kDirs[d][1])) {
                found = d;
                break;
            }
        }
        if (found < 0) break;  // isolated pixel
        if (cx == sx && cy == sy) {
            if (first_dir < 0) {
                first_dir = found;
            } else if (found == first_dir) {
                break;
            }
        }
        cx += kDirs[found][0];
        cy += kDirs[found][1];
        back = (found + 4) % 8;
        if (!(cx == sx && cy == sy)) pts.emplace_back(cx, cy);
    }
    return pts;
}

}  // namespace

std::vector<Contour> outer_contours(const BinaryMask& mask) {
    const Components cc = connected_components(mask, 8);
    std::vector<Contour> out(cc.count());
    std::vector<char> done(cc.count(), 0);
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x) {
            const int l = cc.labels.at(x, y);
            if (l == 0 || done[l - 1]) continue;
            done[l - 1] = 1;
            Contour& c = out[l - 1];
            c.points = trace(cc.labels, l, x, y);
            c.area = std::abs(signed_area(c.points));
            c.pixels = cc.areas[l - 1];
        }
    return out;
}

Ring2 convex_hull_of_largest_contour(const BinaryMask& mask) {
    const auto contours = outer_contours(mask);
    if (contours.empty()) throw EmptyMaskError("mask has no foreground pixels");
    std::size_t best = 0;
    for (std::size_t i = 1; i < contours.size(); ++i) {
        const auto& a = contours[i];
        const auto& b = contours[best];
        if (a.area > b.area || (a.area == b.area && a.pixels > b.pixels)) best = i;
    }
    return convex_hull(contours[best].points);
}

}  // namespace lodtex::imageproc

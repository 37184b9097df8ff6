#include "lodtex/imageproc/components.hpp"

#include "lodtex/core/error.hpp"

#include <utility>

namespace lodtex::imageproc {

Components connected_components(const BinaryMask& mask, int connectivity) {
    if (connectivity != 4 && connectivity != 8) throw ArgumentError("connectivity must be 4 or 8");
    const int w = mask.width(), h = mask.height();
    Components c{Image<int>(w, h, 1, 0), {}};
    std::vector<std::pair<int, int>> stack;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (!mask(x, y) || c.labels.at(x, y) != 0) continue;
            const int label = static_cast<int>(c.areas.size()) + 1;
            std::size_t area = 0;
            stack.assign(1, {x, y});
            c.labels.at(x, y) = label;
            while (!stack.empty()) {
                auto [px, py] = stack.back();
                stack.pop_back();
                ++area;
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        if ((dx == 0 && dy == 0) || (connectivity == 4 && dx != 0 && dy != 0)) continue;
                        const int nx = px + dx, ny = py + dy;
                        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                        if (!mask(nx, ny) || c.labels.at(nx, ny) != 0) continue;
                        c.labels.at(nx, ny) = label;
                        stack.emplace_back(nx, ny);
                    }
            }
            c.areas.push_back(area);
        }
    return c;
}

BinaryMask remove_small_components(const BinaryMask& mask, std::size_t min_area, int connectivity) {
    const Components c = connected_components(mask, connectivity);
    BinaryMask out(mask.width(), mask.height());
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x) {
            const int l = c.labels.at(x, y);
            if (l > 0 && c.areas[l - 1] >= min_area) out.set(x, y);
        }
    return out;
}

}  // namespace lodtex::imageproc

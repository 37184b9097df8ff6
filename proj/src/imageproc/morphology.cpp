#include "lodtex/imageproc/morphology.hpp"

#include "lodtex/core/error.hpp"

#include <vector>

namespace lodtex::imageproc {

namespace {

// One axis of a rectangular dilation or erosion. For dilation the window of
// source indices for output i is [i - (k - 1 - a), i + a]; for erosion it is
// [i - a, i + k - 1 - a]. Counts come from a prefix sum over the line.
void pass(const std::vector<std::uint8_t>& in, std::vector<std::uint8_t>& out, int n, int stride, int lines,
          int line_stride, int k, bool dilate) {
    const int a = k / 2;
    const int lo_off = dilate ? -(k - 1 - a) : -a;
    const int hi_off = dilate ? a : k - 1 - a;
    std::vector<int> prefix(static_cast<std::size_t>(n) + 1);
    for (int l = 0; l < lines; ++l) {
        const std::size_t base = static_cast<std::size_t>(l) * line_stride;
        prefix[0] = 0;
        for (int i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + (in[base + static_cast<std::size_t>(i) * stride] ? 1 : 0);
        for (int i = 0; i < n; ++i) {
            const int lo = i + lo_off, hi = i + hi_off;
            const int clo = lo < 0 ? 0 : lo;
            const int chi = hi >= n ? n - 1 : hi;
            const int set = chi >= clo ? prefix[chi + 1] - prefix[clo] : 0;
            bool v;
            if (dilate) {
                v = set > 0;
            } else {
                v = set == chi - clo + 1;
            }
            out[base + static_cast<std::size_t>(i) * stride] = v ? 1 : 0;
        }
    }
}

BinaryMask apply(const BinaryMask& m, int kx, int ky, bool dilate) {
    const int w = m.width(), h = m.height();
    BinaryMask out(w, h);
    if (w == 0 || h == 0) return out;
    std::vector<std::uint8_t> src(m.bits().begin(), m.bits().end()), tmp(src.size());
    pass(src, tmp, w, 1, h, w, kx, dilate);
    std::vector<std::uint8_t> res(src.size());
    pass(tmp, res, h, w, w, 1, ky, dilate);
    std::copy(res.begin(), res.end(), out.bits().begin());
    return out;
}

}  // namespace

BinaryMask morphology(const BinaryMask& mask, MorphOp op, int kx, int ky) {
    if (kx < 1 || ky < 1) throw ArgumentError("structuring element must be at least 1x1");
    switch (op) {
        case MorphOp::Dilate: return apply(mask, kx, ky, true);
        case MorphOp::Erode: return apply(mask, kx, ky, false);
        case MorphOp::Open: return apply(apply(mask, kx, ky, false), kx, ky, true);
        case MorphOp::Close: return apply(apply(mask, kx, ky, true), kx, ky, false);
    }
    return mask;
}

}  // namespace lodtex::imageproc

#include "lodtex/eval/alignment.hpp"

#include "lodtex/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <tuple>

namespace lodtex::eval {

namespace {

struct Centroid {
    double x = 0.0;
    double y = 0.0;
};

Centroid mask_centroid(const BinaryMask& m) {
    double sx = 0, sy = 0;
    std::size_t n = 0;
    for (int y = 0; y < m.height(); ++y)
        for (int x = 0; x < m.width(); ++x)
            if (m(x, y)) {
                sx += x;
                sy += y;
                ++n;
            }
    if (n == 0) return {};
    return {sx / n, sy / n};
}

std::vector<int> axis_map(int n, double c, double s) {
    std::vector<int> m(n);
    for (int i = 0; i < n; ++i) m[i] = static_cast<int>(std::floor(c + s * (i - c) + 0.5));
    return m;
}

// Scales are handled as integer hundredths so grids are exact.
struct Searcher {
    const BinaryMask& pred;
    const BinaryMask& gt;
    Centroid c;
    std::size_t pred_count;
    std::map<int, std::pair<std::vector<int>, std::vector<int>>> maps;

    double iou(int s100, int dx, int dy) {
        auto it = maps.find(s100);
        if (it == maps.end()) {
            const double s = s100 / 100.0;
            it = maps.emplace(s100, std::make_pair(axis_map(gt.width(), c.x, s), axis_map(gt.height(), c.y, s))).first;
        }
        const auto& [cols, rows] = it->second;
        const int w = gt.width(), h = gt.height();
        // The maps are non-decreasing, so the in-range outputs form one span per axis.
        auto span_of = [](const std::vector<int>& m, int d, int n) {
            const auto lo = std::lower_bound(m.begin(), m.end(), -d);
            const auto hi = std::lower_bound(m.begin(), m.end(), n - d);
            return std::make_pair(static_cast<int>(lo - m.begin()), static_cast<int>(hi - m.begin()));
        };
        const auto [xa, xb] = span_of(cols, dx, w);
        const auto [ya, yb] = span_of(rows, dy, h);
        std::size_t inter = 0, count = 0;
        for (int y = ya; y < yb; ++y) {
            const std::uint8_t* g = gt.bits().data() + static_cast<std::size_t>(rows[y] + dy) * w;
            const std::uint8_t* p = pred.bits().data() + static_cast<std::size_t>(y) * w;
            unsigned c = 0, in = 0;
            for (int x = xa; x < xb; ++x) {
                const std::uint8_t v = g[cols[x] + dx];
                c += v;
                in += v & p[x];
            }
            count += c;
            inter += in;
        }
        const std::size_t uni = pred_count + count - inter;
        return uni == 0 ? 0.0 : static_cast<double>(inter) / uni;
    }
};

struct Best {
    int s100 = 100, dx = 0, dy = 0;
    double iou = -1.0;

    auto rank() const { return std::make_tuple(std::abs(s100 - 100), std::abs(dx) + std::abs(dy), s100, dx, dy); }
    void offer(int s, int x, int y, double v) {
        Best cand{s, x, y, v};
        if (v > iou || (v == iou && cand.rank() < rank())) *this = cand;
    }
};

int hundredths(double v) { return static_cast<int>(std::lround(v * 100.0)); }

}  // namespace

double mask_iou(const BinaryMask& a, const BinaryMask& b) {
    if (!a.same_shape(b)) throw ArgumentError("mask_iou: masks differ in size");
    std::size_t inter = 0, uni = 0;
    const auto pa = a.bits(), pb = b.bits();
    for (std::size_t i = 0; i < pa.size(); ++i) {
        inter += pa[i] & pb[i];
        uni += pa[i] | pb[i];
    }
    return uni == 0 ? 0.0 : static_cast<double>(inter) / uni;
}

BinaryMask transform_gt(const BinaryMask& gt, double scale, int dx, int dy) {
    const Centroid c = mask_centroid(gt);
    const auto cols = axis_map(gt.width(), c.x, scale), rows = axis_map(gt.height(), c.y, scale);
    BinaryMask out(gt.width(), gt.height());
    for (int y = 0; y < gt.height(); ++y)
        for (int x = 0; x < gt.width(); ++x)
            if (gt.get_or(cols[x] + dx, rows[y] + dy)) out.set(x, y);
    return out;
}

BinaryMask resample_mask(const BinaryMask& m, int w, int h) {
    if (w <= 0 || h <= 0) throw ArgumentError("resample_mask: target size must be positive");
    if (m.empty()) throw ArgumentError("resample_mask: empty input");
    if (m.width() == w && m.height() == h) return m;
    const GrayImage g = mask_to_gray(m);
    BinaryMask out(w, h);
    const double fx = static_cast<double>(m.width()) / w, fy = static_cast<double>(m.height()) / h;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (sample_bilinear(g, (x + 0.5) * fx - 0.5, (y + 0.5) * fy - 0.5) >= 0.5) out.set(x, y);
    return out;
}

AlignmentResult align_and_score(const BinaryMask& pred, const BinaryMask& gt, const AlignmentParams& p) {
    if (!pred.same_shape(gt)) throw ArgumentError("align_and_score: masks differ in size");
    if (p.coarse_scale_step <= 0 || p.fine_scale_step <= 0 || p.coarse_shift_step <= 0 || p.fine_shift_step <= 0 ||
        p.shift_max < 0 || p.scale_min > p.scale_max || p.scale_min <= 0)
        throw ArgumentError("align_and_score: invalid search parameters");
    AlignmentResult r;
    const std::size_t pc = pred.count(), gc = gt.count();
    if (pc == 0 || gc == 0) return r;

    Searcher s{pred, gt, mask_centroid(gt), pc, {}};
    r.identity_iou = s.iou(100, 0, 0);

    const int smin = hundredths(p.scale_min), smax = hundredths(p.scale_max);
    const int cs = std::max(1, hundredths(p.coarse_scale_step)), fs = std::max(1, hundredths(p.fine_scale_step));
    const int ct = p.coarse_shift_step, ft = p.fine_shift_step, m = p.shift_max;

    Best coarse;
    coarse.offer(100, 0, 0, r.identity_iou);
    for (int sc = smin; sc <= smax; sc += cs)
        for (int dy = -m; dy <= m; dy += ct)
            for (int dx = -m; dx <= m; dx += ct) coarse.offer(sc, dx, dy, s.iou(sc, dx, dy));

    Best fine = coarse;
    for (int sc = std::max(smin, coarse.s100 - cs); sc <= std::min(smax, coarse.s100 + cs); sc += fs)
        for (int dy = std::max(-m, coarse.dy - ct); dy <= std::min(m, coarse.dy + ct); dy += ft)
            for (int dx = std::max(-m, coarse.dx - ct); dx <= std::min(m, coarse.dx + ct); dx += ft)
                fine.offer(sc, dx, dy, s.iou(sc, dx, dy));

    r.coarse = {coarse.s100 / 100.0, coarse.dx, coarse.dy, coarse.iou};
    r.scale = fine.s100 / 100.0;
    r.dx = fine.dx;
    r.dy = fine.dy;
    r.iou = fine.iou;
    return r;
}

}  // namespace lodtex::eval

#include "lodtex/imageproc/ssim.hpp"

#include "lodtex/core/error.hpp"
#include "lodtex/imageproc/filter.hpp"

#include <algorithm>
#include <vector>

namespace lodtex::imageproc {

namespace {

using Plane = std::vector<double>;

// 'Valid' separable filtering: output is (w - k + 1) x (h - k + 1).
Plane filter_valid(const Plane& in, int w, int h, const std::vector<double>& k) {
    const int n = static_cast<int>(k.size());
    const int ow = w - n + 1, oh = h - n + 1;
    Plane tmp(static_cast<std::size_t>(ow) * h), out(static_cast<std::size_t>(ow) * oh);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i) acc += k[i] * in[static_cast<std::size_t>(y) * w + x + i];
            tmp[static_cast<std::size_t>(y) * ow + x] = acc;
        }
    for (int y = 0; y < oh; ++y)
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i) acc += k[i] * tmp[static_cast<std::size_t>(y + i) * ow + x];
            out[static_cast<std::size_t>(y) * ow + x] = acc;
        }
    return out;
}

}  // namespace

double ssim(const GrayImage& a, const GrayImage& b, const SsimParams& p) {
    if (a.width() != b.width() || a.height() != b.height())
        throw ArgumentError("ssim inputs differ in size");
    const int w = a.width(), h = a.height();
    if (w == 0 || h == 0) throw ArgumentError("ssim of an empty image");
    int win = std::min({p.window, w, h});
    if (win % 2 == 0) --win;
    const auto k = gaussian_kernel(win, p.sigma);

    const std::size_t n = static_cast<std::size_t>(w) * h;
    Plane pa(n), pb(n), aa(n), bb(n), ab(n);
    for (std::size_t i = 0; i < n; ++i) {
        pa[i] = a.data()[i];
        pb[i] = b.data()[i];
        aa[i] = pa[i] * pa[i];
        bb[i] = pb[i] * pb[i];
        ab[i] = pa[i] * pb[i];
    }
    const Plane ma = filter_valid(pa, w, h, k), mb = filter_valid(pb, w, h, k);
    const Plane saa = filter_valid(aa, w, h, k), sbb = filter_valid(bb, w, h, k), sab = filter_valid(ab, w, h, k);

    const double c1 = (p.k1 * p.dynamic_range) * (p.k1 * p.dynamic_range);
    const double c2 = (p.k2 * p.dynamic_range) * (p.k2 * p.dynamic_range);
    double sum = 0.0;
    for (std::size_t i = 0; i < ma.size(); ++i) {
        const double va = saa[i] - ma[i] * ma[i];
        const double vb = sbb[i] - mb[i] * mb[i];
        const double cov = sab[i] - ma[i] * mb[i];
        sum += ((2 * ma[i] * mb[i] + c1) * (2 * cov + c2)) / ((ma[i] * ma[i] + mb[i] * mb[i] + c1) * (va + vb + c2));
    }
    return sum / static_cast<double>(ma.size());
}

double ssim(const RasterImage& a, const RasterImage& b, const SsimParams& p) {
    return ssim(to_gray(a), to_gray(b), p);
}

}  // namespace lodtex::imageproc

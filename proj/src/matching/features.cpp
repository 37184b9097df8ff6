#include "lodtex/matching/features.hpp"

#include "lodtex/core/error.hpp"
#include "lodtex/imageproc/filter.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>

namespace lodtex::matching {

namespace {

bool normalize(std::vector<float>& d) {
    double n = 0.0;
    for (float v : d) n += static_cast<double>(v) * v;
    n = std::sqrt(n);
    if (!(n > 1e-12)) return false;
    for (float& v : d) v = static_cast<float>(v / n);
    return true;
}

}  // namespace

std::vector<Keypoint> detect_and_describe(const RasterImage& img, const DetectorOptions& opt) {
    const int w = img.width(), h = img.height();
    const int half = opt.patch_size / 2;
    const int border = static_cast<int>(std::ceil(half * std::sqrt(2.0))) + 2;
    if (w <= 2 * border || h <= 2 * border) return {};

    const GrayImage gray = imageproc::gaussian_blur(to_gray(img), opt.blur_kernel);
    const auto g = imageproc::sobel(gray);
    GrayImage ixx(w, h, 1), iyy(w, h, 1), ixy(w, h, 1);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double gx = g.gx.at(x, y) / 8.0, gy = g.gy.at(x, y) / 8.0;
            ixx.at(x, y) = static_cast<float>(gx * gx);
            iyy.at(x, y) = static_cast<float>(gy * gy);
            ixy.at(x, y) = static_cast<float>(gx * gy);
        }
    ixx = imageproc::gaussian_blur(ixx, 9, 2.0);
    iyy = imageproc::gaussian_blur(iyy, 9, 2.0);
    ixy = imageproc::gaussian_blur(ixy, 9, 2.0);

    GrayImage resp(w, h, 1);
    float rmax = 0.0f;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double a = ixx.at(x, y), b = iyy.at(x, y), c = ixy.at(x, y);
            const double r = a * b - c * c - opt.harris_k * (a + b) * (a + b);
            resp.at(x, y) = static_cast<float>(r);
            rmax = std::max(rmax, resp.at(x, y));
        }
    if (!(rmax > 0.0f)) return {};

    struct Cand {
        int x, y;
        float r;
    };
    std::vector<Cand> cands;
    const float floor_r = static_cast<float>(opt.quality * rmax);
    const int nr = opt.nms_radius;
    for (int y = border; y < h - border; ++y)
        for (int x = border; x < w - border; ++x) {
            const float r = resp.at(x, y);
            if (r <= floor_r) continue;
            bool peak = true;
            for (int dy = -nr; dy <= nr && peak; ++dy)
                for (int dx = -nr; dx <= nr; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    const float o = resp.at(x + dx, y + dy);
                    // Plateaus keep their first pixel in raster order.
                    if (o > r || (o == r && (dy < 0 || (dy == 0 && dx < 0)))) {
                        peak = false;
                        break;
                    }
                }
            if (peak) cands.push_back({x, y, r});
        }
    std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.r > b.r; });

    std::vector<Keypoint> out;
    const int radius = half;
    for (const auto& c : cands) {
        if (static_cast<int>(out.size()) >= opt.max_features) break;
        Keypoint k;
        auto sub = [](double l, double m, double r) {
            const double d = l - 2 * m + r;
            return d < 0 ? std::clamp(0.5 * (l - r) / d, -0.5, 0.5) : 0.0;
        };
        k.x = c.x + sub(resp.at(c.x - 1, c.y), c.r, resp.at(c.x + 1, c.y));
        k.y = c.y + sub(resp.at(c.x, c.y - 1), c.r, resp.at(c.x, c.y + 1));
        k.response = c.r;

        double m10 = 0.0, m01 = 0.0;
        for (int dy = -radius; dy <= radius; ++dy)
            for (int dx = -radius; dx <= radius; ++dx) {
                if (dx * dx + dy * dy > radius * radius) continue;
                const double v = gray.at(c.x + dx, c.y + dy);
                m10 += dx * v;
                m01 += dy * v;
            }
        k.orientation = (m10 == 0.0 && m01 == 0.0) ? 0.0 : std::atan2(m01, m10);

        const double cs = std::cos(k.orientation), sn = std::sin(k.orientation);
        k.descriptor.resize(static_cast<std::size_t>(opt.patch_size) * opt.patch_size);
        double mean = 0.0;
        for (int j = 0; j < opt.patch_size; ++j)
            for (int i = 0; i < opt.patch_size; ++i) {
                const double u = i - (opt.patch_size - 1) / 2.0, v = j - (opt.patch_size - 1) / 2.0;
                const double sx = k.x + cs * u - sn * v, sy = k.y + sn * u + cs * v;
                const double val = sample_bilinear(gray, sx, sy);
                k.descriptor[static_cast<std::size_t>(j) * opt.patch_size + i] = static_cast<float>(val);
                mean += val;
            }
        mean /= static_cast<double>(k.descriptor.size());
        for (float& v : k.descriptor) v = static_cast<float>(v - mean);
        if (!normalize(k.descriptor)) continue;
        out.push_back(std::move(k));
    }
    return out;
}

std::vector<Keypoint> load_keypoints(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open keypoint file", path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("keypoint JSON: ") + e.what(), 0);
    }
    if (!doc.contains("points") || !doc["points"].is_array()) throw ArgumentError("keypoint file needs 'points'");
    std::vector<Keypoint> out;
    std::size_t len = 0;
    for (const auto& p : doc["points"]) {
        Keypoint k;
        k.x = p.at("x").get<double>();
        k.y = p.at("y").get<double>();
        k.scale = p.value("scale", 1.0);
        k.orientation = p.value("orientation", 0.0);
        k.descriptor = p.at("desc").get<std::vector<float>>();
        if (out.empty()) len = k.descriptor.size();
        if (k.descriptor.size() != len || len == 0) throw ArgumentError("descriptor lengths differ in " + path.string());
        if (!normalize(k.descriptor)) throw ArgumentError("zero descriptor in " + path.string());
        out.push_back(std::move(k));
    }
    return out;
}

}  // namespace lodtex::matching

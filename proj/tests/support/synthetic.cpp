#include "synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace synth {

namespace {

constexpr double kPi = 3.14159265358979323846;
double rad(double d) { return d * kPi / 180.0; }

// Pixel (x, y) with integer values at centres: theta = (x / W - 0.5) * 360,
// phi = (0.5 - y / H) * 180.
V3 cam_dir(double x, double y, int w, int h) {
    const double th = rad((x / w - 0.5) * 360.0), ph = rad((0.5 - y / h) * 180.0);
    return {std::cos(ph) * std::sin(th), std::sin(ph), std::cos(ph) * std::cos(th)};
}

V3 level_to_enu(const V3& d, double heading) {
    const double s = std::sin(rad(heading)), c = std::cos(rad(heading));
    const V3 fwd(s, c, 0), right(c, -s, 0), up(0, 0, 1);
    return d.x() * right + d.y() * up + d.z() * fwd;
}

std::array<double, 3> background(const V3& enu) {
    const double t = 0.5 + 0.5 * enu.z();
    return {110 + 60 * t, 120 + 60 * t, 100 + 100 * t};
}

int parity(double u, double v, double sq) {
    return (static_cast<long>(std::floor(u / sq)) + static_cast<long>(std::floor(v / sq))) & 1;
}

std::uint8_t to_u8(double v) { return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L)); }

}  // namespace

Eigen::Matrix3d tilt_matrix(double pitch_deg, double roll_deg) {
    const double cp = std::cos(rad(pitch_deg)), sp = std::sin(rad(pitch_deg));
    const double cr = std::cos(rad(roll_deg)), sr = std::sin(rad(roll_deg));
    Eigen::Matrix3d rx, rz;
    rx << 1, 0, 0, 0, cp, -sp, 0, sp, cp;
    rz << cr, -sr, 0, sr, cr, 0, 0, 0, 1;
    return rx * rz;
}

std::array<double, 3> checker_area(const Checker& c, double u0, double u1, double v0, double v1, int ss) {
    std::array<double, 3> acc{0, 0, 0};
    for (int j = 0; j < ss; ++j)
        for (int i = 0; i < ss; ++i) {
            const double u = u0 + (u1 - u0) * (i + 0.5) / ss, v = v0 + (v1 - v0) * (j + 0.5) / ss;
            const auto& col = parity(u, v, c.square_m) ? c.b : c.a;
            for (int k = 0; k < 3; ++k) acc[k] += col[k];
        }
    for (auto& a : acc) a /= ss * ss;
    return acc;
}

lodtex::RasterImage render_facade_pano(const FacadeRect& f, const Checker& c, const PanoCamera& cam, int width,
                                       int height, int ss) {
    lodtex::RasterImage img(width, height, 3);
    const Eigen::Matrix3d to_level = tilt_matrix(cam.pitch, cam.roll).transpose();
    const V3 v = V3::UnitZ(), n = f.u.cross(v);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            std::array<double, 3> acc{0, 0, 0};
            for (int j = 0; j < ss; ++j)
                for (int i = 0; i < ss; ++i) {
                    const V3 d = level_to_enu(to_level * cam_dir(x - 0.5 + (i + 0.5) / ss, y - 0.5 + (j + 0.5) / ss,
                                                                 width, height),
                                              cam.heading);
                    std::array<double, 3> col = background(d);
                    const double den = d.dot(n);
                    if (std::abs(den) > 1e-12) {
                        const double t = (f.origin - cam.centre).dot(n) / den;
                        if (t > 0) {
                            const V3 p = cam.centre + t * d - f.origin;
                            const double pu = p.dot(f.u), pv = p.dot(v);
                            if (pu >= 0 && pu <= f.width && pv >= 0 && pv <= f.height) {
                                const auto& cc = parity(pu, pv, c.square_m) ? c.b : c.a;
                                col = {double(cc[0]), double(cc[1]), double(cc[2])};
                            }
                        }
                    }
                    for (int k = 0; k < 3; ++k) acc[k] += col[k];
                }
            for (int k = 0; k < 3; ++k) img.at(x, y, k) = to_u8(acc[k] / (ss * ss));
        }
    return img;
}

lodtex::RasterImage checker_texture(const FacadeRect& f, const Checker& c, int width, int height, int ss) {
    lodtex::RasterImage img(width, height, 3);
    const double du = f.width / width, dv = f.height / height;
    for (int r = 0; r < height; ++r)
        for (int col = 0; col < width; ++col) {
            const double v1 = f.height - r * dv;
            const auto a = checker_area(c, col * du, (col + 1) * du, v1 - dv, v1, ss);
            for (int k = 0; k < 3; ++k) img.at(col, r, k) = to_u8(a[k]);
        }
    return img;
}

lodtex::RasterImage render_band_pano(double pitch_deg, double roll_deg, int width, int height, std::uint64_t seed,
                                     int ss) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> grey(30.0, 225.0), gap(4.0, 12.0);
    std::vector<double> edges{0.0}, levels;
    while (edges.back() < 360.0) {
        edges.push_back(edges.back() + gap(rng));
        levels.push_back(grey(rng));
    }
    edges.back() = 360.0;
    const double soft = 0.25;  // band transition half-width, degrees
    auto band = [&](double b) {
        const std::size_t n = levels.size();
        std::size_t k = std::upper_bound(edges.begin(), edges.end(), b) - edges.begin() - 1;
        k = std::min(k, n - 1);
        double val = levels[k];
        const double to_next = edges[k + 1] - b, from_prev = b - edges[k];
        if (to_next < soft) {
            const double w = 0.5 * (1 - to_next / soft);
            val = (1 - w) * levels[k] + w * levels[(k + 1) % n];
        } else if (from_prev < soft) {
            const double w = 0.5 * (1 - from_prev / soft);
            val = (1 - w) * levels[k] + w * levels[(k + n - 1) % n];
        }
        return val;
    };
    lodtex::RasterImage img(width, height, 3);
    const Eigen::Matrix3d to_level = tilt_matrix(pitch_deg, roll_deg).transpose();
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            double acc = 0;
            for (int j = 0; j < ss; ++j)
                for (int i = 0; i < ss; ++i) {
                    const V3 d = to_level * cam_dir(x - 0.5 + (i + 0.5) / ss, y - 0.5 + (j + 0.5) / ss, width, height);
                    const double el = std::asin(std::clamp(d.y(), -1.0, 1.0)) * 180.0 / kPi;
                    double b = std::atan2(d.x(), d.z()) * 180.0 / kPi;
                    if (b < 0) b += 360.0;
                    const double fade = std::clamp((std::abs(el) - 50.0) / 20.0, 0.0, 1.0);
                    const double bg = el > 0 ? 200.0 : 70.0;
                    acc += (1 - fade) * band(b) + fade * bg;
                }
            const auto g = to_u8(acc / (ss * ss));
            for (int k = 0; k < 3; ++k) img.at(x, y, k) = g;
        }
    return img;
}

}  // namespace synth

#include "lodtex/imageproc/quadfit.hpp"

#include "lodtex/brep/plane.hpp"
#include "lodtex/core/error.hpp"
#include "lodtex/imageproc/polygon.hpp"

#include <algorithm>
#include <cmath>

namespace lodtex::imageproc {

std::array<Vec2, 4> order_quad(std::array<Vec2, 4> q) {
    if (signed_area(q) < 0) std::reverse(q.begin(), q.end());
    std::size_t tl = 0;
    for (std::size_t i = 1; i < 4; ++i) {
        const double s = q[i].x() + q[i].y(), b = q[tl].x() + q[tl].y();
        if (s < b - 1e-12 || (std::abs(s - b) <= 1e-12 && q[i].y() < q[tl].y())) tl = i;
    }
    std::rotate(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(tl), q.end());
    return q;
}

namespace {

std::array<Vec2, 4> grow(const std::array<Vec2, 4>& q, double margin) {
    if (margin == 0.0) return q;
    const Vec2 c = (q[0] + q[1] + q[2] + q[3]) / 4.0;
    std::array<Vec2, 4> out;
    for (int i = 0; i < 4; ++i) out[i] = c + (1.0 + margin) * (q[i] - c);
    return out;
}

}  // namespace

std::vector<double> epsilon_schedule(const QuadFitParams& p) {
    if (!(p.eps_init > 0 && p.eps_init <= p.eps_max)) throw ArgumentError("need 0 < eps_init <= eps_max");
    std::vector<double> out;
    for (int k = 0;; ++k) {
        const double eps = p.eps_init + k * p.eps_step;
        if (eps > p.eps_max + 1e-12) break;
        out.push_back(eps);
        if (!(p.eps_step > 0)) break;
    }
    return out;
}

QuadFit fit_quadrilateral(std::span<const Vec2> hull, const QuadFitParams& p) {
    if (hull.size() < 3) throw DegenerateGeometryError("quadrilateral fit needs at least 3 hull points");
    if (std::abs(signed_area(hull)) < 1e-12) throw DegenerateGeometryError("hull has zero area");
    if (!(p.eps_init > 0 && p.eps_init <= p.eps_max)) throw ArgumentError("need 0 < eps_init <= eps_max");

    QuadFit fit;
    if (hull.size() == 3) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < 3; ++i)
            if ((hull[(i + 1) % 3] - hull[i]).squaredNorm() > (hull[(best + 1) % 3] - hull[best]).squaredNorm())
                best = i;
        std::array<Vec2, 4> q;
        std::size_t k = 0;
        for (std::size_t i = 0; i < 3; ++i) {
            q[k++] = hull[i];
            if (i == best) q[k++] = (hull[i] + hull[(i + 1) % 3]) / 2.0;
        }
        fit.corners = order_quad(grow(q, p.margin));
        fit.iou = polygon_iou(fit.corners, hull);
        return fit;
    }
    if (hull.size() == 4) {
        fit.corners = order_quad(grow({hull[0], hull[1], hull[2], hull[3]}, p.margin));
        fit.iou = polygon_iou(fit.corners, hull);
        return fit;
    }

    struct Candidate {
        std::array<Vec2, 4> q;
        QuadSource src;
    };
    std::vector<Candidate> cands;
    const double per = perimeter(hull);
    for (double eps : epsilon_schedule(p)) {
        fit.eps_tried.push_back(eps);
        const Ring2 s = simplify_closed(hull, eps * per);
        if (s.size() == 4) {
            cands.push_back({{s[0], s[1], s[2], s[3]}, QuadSource::Simplified});
            break;
        }
    }
    if (static_cast<int>(hull.size()) <= p.max_vertices) {
        const std::size_t n = hull.size();
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                for (std::size_t c = b + 1; c < n; ++c)
                    for (std::size_t d = c + 1; d < n; ++d)
                        cands.push_back({{hull[a], hull[b], hull[c], hull[d]}, QuadSource::Subset});
    }
    const auto rect = brep::min_area_rect(hull);
    cands.push_back({rect.corners, QuadSource::MinAreaRect});

    double best = -1.0;
    for (const auto& c : cands) {
        const double iou = polygon_iou(c.q, hull);
        if (iou > best) {
            best = iou;
            fit.corners = c.q;
            fit.source = c.src;
        }
    }
    fit.corners = order_quad(grow(fit.corners, p.margin));
    fit.iou = polygon_iou(fit.corners, hull);
    return fit;
}

}  // namespace lodtex::imageproc

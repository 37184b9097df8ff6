#include "lodtex/matching/matching.hpp"

#include "lodtex/core/error.hpp"

#include <cmath>
#include <limits>

namespace lodtex::matching {

namespace {

double l2(const std::vector<float>& a, const std::vector<float>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = static_cast<double>(a[i]) - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace

MatchSet match_ratio(const std::vector<Keypoint>& a, const std::vector<Keypoint>& b, double ratio) {
    MatchSet out;
    if (b.size() < 2 || a.empty()) return out;
    const std::size_t len = a.front().descriptor.size();
    for (const auto& k : a)
        if (k.descriptor.size() != len) throw ArgumentError("descriptor lengths differ");
    for (const auto& k : b)
        if (k.descriptor.size() != len) throw ArgumentError("descriptor lengths differ");

    std::vector<std::vector<double>> d(a.size(), std::vector<double>(b.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) d[i][j] = l2(a[i].descriptor, b[j].descriptor);

    // Nearest a for every b, first index on ties.
    std::vector<std::size_t> back(b.size(), 0);
    for (std::size_t j = 0; j < b.size(); ++j)
        for (std::size_t i = 1; i < a.size(); ++i)
            if (d[i][j] < d[back[j]][j]) back[j] = i;

    for (std::size_t i = 0; i < a.size(); ++i) {
        std::size_t j1 = 0;
        double d1 = std::numeric_limits<double>::infinity(), d2 = d1;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (d[i][j] < d1) {
                d2 = d1;
                d1 = d[i][j];
                j1 = j;
            } else if (d[i][j] < d2) {
                d2 = d[i][j];
            }
        }
        if (!(d2 > 0.0) || !(d1 / d2 < ratio)) continue;
        if (back[j1] != i) continue;
        out.pairs.push_back({i, j1, d1});
    }
    return out;
}

}  // namespace lodtex::matching

#include "lodtex/masks/facade_masks.hpp"

#include "lodtex/core/error.hpp"
#include "lodtex/core/image_io.hpp"
#include "lodtex/imageproc/components.hpp"
#include "lodtex/imageproc/morphology.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

namespace lodtex::masks {

MaskManifest load_mask_manifest(const std::filesystem::path& path, std::optional<std::size_t> top_k) {
    std::ifstream in(path);
    if (!in) throw ManifestError("cannot open manifest " + path.string(), -1);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ManifestError(std::string("invalid JSON: ") + e.what(), -1);
    }
    if (!doc.is_object() || !doc.contains("masks") || !doc["masks"].is_array())
        throw ManifestError("manifest needs a 'masks' array", -1);

    const auto dir = path.parent_path();
    MaskManifest m;
    int want_w = -1, want_h = -1;
    if (doc.contains("image") && doc["image"].is_string()) {
        m.image = dir / doc["image"].get<std::string>();
        if (std::filesystem::exists(m.image)) std::tie(want_w, want_h) = read_image_size(m.image);
    }

    const auto& entries = doc["masks"];
    const std::size_t n = top_k ? std::min(*top_k, entries.size()) : entries.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto idx = static_cast<std::ptrdiff_t>(i);
        const auto& e = entries[i];
        if (!e.is_object() || !e.contains("mask") || !e["mask"].is_string())
            throw ManifestError("entry needs a 'mask' path", idx);
        const auto mpath = dir / e["mask"].get<std::string>();
        if (!std::filesystem::exists(mpath)) throw ManifestError("mask file not found: " + mpath.string(), idx);
        LabeledMask lm;
        try {
            lm.mask = read_mask(mpath);
        } catch (const Error& err) {
            throw ManifestError(err.what(), idx);
        }
        if (want_w < 0) {
            want_w = lm.mask.width();
            want_h = lm.mask.height();
        }
        if (lm.mask.width() != want_w || lm.mask.height() != want_h)
            throw ManifestError("mask is " + std::to_string(lm.mask.width()) + "x" + std::to_string(lm.mask.height()) +
                                    ", expected " + std::to_string(want_w) + "x" + std::to_string(want_h),
                                idx);
        if (e.contains("scores")) {
            if (!e["scores"].is_object()) throw ManifestError("'scores' must be an object", idx);
            for (const auto& [label, v] : e["scores"].items()) {
                if (!v.is_number()) throw ManifestError("score for '" + label + "' is not a number", idx);
                const double s = v.get<double>();
                if (!(s >= 0.0 && s <= 1.0)) throw ManifestError("score for '" + label + "' outside [0, 1]", idx);
                lm.label_scores[label] = s;
            }
        }
        m.masks.push_back(std::move(lm));
    }
    return m;
}

FilteredMasks filter_facade_masks(const std::vector<LabeledMask>& masks, double threshold) {
    FilteredMasks out;
    for (const auto& m : masks) {
        if (m.label_scores.empty()) continue;
        double best = -1.0;
        int ties = 0;
        std::string label;
        for (const auto& [l, s] : m.label_scores) {
            if (s > best) {
                best = s;
                label = l;
                ties = 1;
            } else if (s == best) {
                ++ties;
            }
        }
        if (ties > 1) continue;
        if (label == kFacadeLabel && best > threshold) out.facades.push_back(m.mask);
        else if (label == kEaveLabel) out.eaves.push_back(m.mask);
    }
    return out;
}

BinaryMask combine_and_clean(const std::vector<BinaryMask>& facades, const std::vector<BinaryMask>& eaves,
                             std::size_t min_area, int kernel) {
    if (facades.empty()) throw EmptyMaskError("no facade masks to combine");
    BinaryMask m = facades.front();
    for (std::size_t i = 1; i < facades.size(); ++i) m = mask_or(m, facades[i]);
    for (const auto& e : eaves) m = mask_subtract(m, e);
    m = imageproc::remove_small_components(m, min_area);
    m = imageproc::morphology(m, imageproc::MorphOp::Open, kernel, kernel);
    return imageproc::morphology(m, imageproc::MorphOp::Close, kernel, kernel);
}

RasterImage apply_mask(const RasterImage& img, const BinaryMask& mask) {
    if (img.width() != mask.width() || img.height() != mask.height())
        throw ArgumentError("image and mask differ in size");
    RasterImage out = img;
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            if (!mask(x, y))
                for (int c = 0; c < img.channels(); ++c) out.at(x, y, c) = 0;
    return out;
}

}  // namespace lodtex::masks

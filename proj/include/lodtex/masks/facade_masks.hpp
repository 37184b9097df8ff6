#pragma once

#include "lodtex/core/image.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lodtex::masks {

inline constexpr const char* kFacadeLabel = "building facade";
inline constexpr const char* kEaveLabel = "building eave";

struct LabeledMask {
    BinaryMask mask;
    std::map<std::string, double> label_scores;
};

struct MaskManifest {
    std::filesystem::path image;  // resolved against the manifest directory
    std::vector<LabeledMask> masks;
};

/// Reads `{image, masks: [{mask, scores}]}`. Relative paths resolve against
/// the manifest's directory. When the image exists its size is enforced on
/// every mask, otherwise the first mask sets it. top_k keeps the first k entries.
MaskManifest load_mask_manifest(const std::filesystem::path& path, std::optional<std::size_t> top_k = std::nullopt);

struct FilteredMasks {
    std::vector<BinaryMask> facades;
    std::vector<BinaryMask> eaves;
};

/// Argmax-label routing; ties at the maximum discard the mask.
FilteredMasks filter_facade_masks(const std::vector<LabeledMask>& masks, double threshold = 0.05);

/// OR(facades) minus OR(eaves), small components removed, then open and
/// close with a kernel x kernel rectangle.
BinaryMask combine_and_clean(const std::vector<BinaryMask>& facades, const std::vector<BinaryMask>& eaves,
                             std::size_t min_area = 2000, int kernel = 25);

/// Zeroes pixels outside the mask.
RasterImage apply_mask(const RasterImage& img, const BinaryMask& mask);

}  // namespace lodtex::masks

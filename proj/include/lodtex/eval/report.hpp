#pragma once

#include "lodtex/core/image.hpp"
#include "lodtex/eval/alignment.hpp"

#include <nlohmann/json.hpp>

#include <ostream>
#include <span>
#include <string>

namespace lodtex::eval {

struct EvalReport {
    double raw_iou = 0.0;
    double aligned_iou = 0.0;
    double ssim = 0.0;  // between pred and the aligned GT
    double scale = 1.0;
    double dx = 0.0;
    double dy = 0.0;
};

/// pred is resampled to the GT size when they differ.
EvalReport evaluate_pair(const BinaryMask& pred, const BinaryMask& gt, const AlignmentParams& p = {});

nlohmann::json to_json(const EvalReport& r);

struct BatchRow {
    std::string building_id;
    std::string wall;
    EvalReport report;
};

EvalReport mean_report(std::span<const BatchRow> rows);

/// `building_id,wall,raw_iou,aligned_iou,ssim,scale,dx,dy`, then a `mean` row.
void write_batch_csv(std::ostream& out, std::span<const BatchRow> rows);

}  // namespace lodtex::eval

#include "lodtex/eval/report.hpp"

#include "lodtex/core/error.hpp"
#include "lodtex/imageproc/ssim.hpp"

#include <charconv>
#include <string>

namespace lodtex::eval {

namespace {

std::string num(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

void row(std::ostream& out, const std::string& id, const std::string& wall, const EvalReport& r) {
    out << id << ',' << wall << ',' << num(r.raw_iou) << ',' << num(r.aligned_iou) << ',' << num(r.ssim) << ','
        << num(r.scale) << ',' << num(r.dx) << ',' << num(r.dy) << '\n';
}

}  // namespace

EvalReport evaluate_pair(const BinaryMask& pred_in, const BinaryMask& gt, const AlignmentParams& p) {
    if (gt.empty()) throw ArgumentError("evaluate_pair: empty ground truth");
    const BinaryMask pred = resample_mask(pred_in, gt.width(), gt.height());
    const AlignmentResult a = align_and_score(pred, gt, p);
    EvalReport r;
    r.raw_iou = a.identity_iou;
    r.aligned_iou = a.iou;
    r.scale = a.scale;
    r.dx = a.dx;
    r.dy = a.dy;
    const BinaryMask aligned = transform_gt(gt, a.scale, a.dx, a.dy);
    r.ssim = imageproc::ssim(mask_to_image(pred), mask_to_image(aligned));
    return r;
}

nlohmann::json to_json(const EvalReport& r) {
    return {{"raw_iou", r.raw_iou}, {"aligned_iou", r.aligned_iou}, {"ssim", r.ssim},
            {"lpips", "not computed"}, {"scale", r.scale}, {"dx", r.dx}, {"dy", r.dy}};
}

EvalReport mean_report(std::span<const BatchRow> rows) {
    EvalReport m;
    if (rows.empty()) return m;
    m.scale = 0.0;
    for (const auto& b : rows) {
        m.raw_iou += b.report.raw_iou;
        m.aligned_iou += b.report.aligned_iou;
        m.ssim += b.report.ssim;
        m.scale += b.report.scale;
        m.dx += b.report.dx;
        m.dy += b.report.dy;
    }
    const double n = static_cast<double>(rows.size());
    m.raw_iou /= n;
    m.aligned_iou /= n;
    m.ssim /= n;
    m.scale /= n;
    m.dx /= n;
    m.dy /= n;
    return m;
}

void write_batch_csv(std::ostream& out, std::span<const BatchRow> rows) {
    out << "building_id,wall,raw_iou,aligned_iou,ssim,scale,dx,dy\n";
    for (const auto& b : rows) row(out, b.building_id, b.wall, b.report);
    row(out, "mean", "", mean_report(rows));
}

}  // namespace lodtex::eval

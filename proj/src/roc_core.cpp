#include "rocch/roc_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace rocch {

char to_char(ClassLabel label) {
    return label == ClassLabel::positive ? 'p' : 'n';
}

ClassLabel parse_label(std::string_view text) {
    if (text == "p") return ClassLabel::positive;
    if (text == "n") return ClassLabel::negative;
    throw DataError("bad label '" + std::string(text) + "' (expected p or n)");
}

void validate(const RocPoint& p) {
    auto in_unit = [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; };
    if (!in_unit(p.fp) || !in_unit(p.tp)) {
        throw DataError("ROC point out of range: (" + std::to_string(p.fp) + ", " +
                        std::to_string(p.tp) + ")");
    }
}

std::vector<RocPoint> RocCurve::roc_points() const {
    std::vector<RocPoint> out;
    out.reserve(points.size());
    for (const auto& cp : points) out.push_back(cp.point);
    return out;
}

RocCurve generate_roc_curve(std::span<const ScoredExample> examples,
                            std::string classifier_id) {
    if (examples.empty()) throw DataError("degenerate class distribution: no examples");
    for (const auto& e : examples) {
        if (!std::isfinite(e.score))
            throw DataError("non-finite score for example '" + e.example_id + "'");
        if (!(e.weight > 0.0) || !std::isfinite(e.weight))
            throw DataError("non-positive weight for example '" + e.example_id + "'");
    }

    // Full ordering beyond the score so that weighted sums are accumulated in
    // the same order regardless of input permutation.
    std::vector<const ScoredExample*> sorted;
    sorted.reserve(examples.size());
    for (const auto& e : examples) sorted.push_back(&e);
    std::sort(sorted.begin(), sorted.end(), [](const ScoredExample* a, const ScoredExample* b) {
        if (a->score != b->score) return a->score > b->score;
        if (a->label != b->label) return a->label < b->label;
        if (a->weight != b->weight) return a->weight < b->weight;
        return a->example_id < b->example_id;
    });

    double total_pos = 0.0;
    double total_neg = 0.0;
    for (const auto* e : sorted) {
        (e->label == ClassLabel::positive ? total_pos : total_neg) += e->weight;
    }
    if (total_pos == 0.0 || total_neg == 0.0)
        throw DataError("degenerate class distribution: need both positive and negative examples");

    RocCurve curve;
    curve.classifier_id = std::move(classifier_id);

    double t_count = 0.0;
    double f_count = 0.0;
    double last_score = kThresholdAbove;
    bool first = true;
    for (const auto* e : sorted) {
        if (first || e->score != last_score) {
            curve.points.push_back({last_score, {f_count / total_neg, t_count / total_pos}});
            last_score = e->score;
            first = false;
        }
        (e->label == ClassLabel::positive ? t_count : f_count) += e->weight;
    }
    curve.points.push_back({kThresholdBelow, {1.0, 1.0}});
    return curve;
}

RocPoint rates_from_counts(const ConfusionCounts& c) {
    for (double v : {c.tp_count, c.fp_count, c.tn_count, c.fn_count}) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw DataError("confusion counts must be finite and >= 0");
    }
    const double pos = c.positives();
    const double neg = c.negatives();
    if (pos <= 0.0 || neg <= 0.0)
        throw DataError("degenerate class distribution: zero positives or negatives");
    return {c.fp_count / neg, c.tp_count / pos};
}

double accuracy(const RocPoint& point, double p_pos) {
    if (!(p_pos > 0.0 && p_pos < 1.0)) throw DataError("prior must lie in (0,1)");
    return p_pos * point.tp + (1.0 - p_pos) * (1.0 - point.fp);
}

PointMetrics point_metrics(const RocPoint& point, double positives, double negatives) {
    if (!(positives > 0.0) || !(negatives > 0.0))
        throw DataError("class totals must be positive");
    PointMetrics m;
    m.recall = point.tp;
    const double true_sel = point.tp * positives;
    const double selected = true_sel + point.fp * negatives;
    if (selected > 0.0) {
        m.precision = true_sel / selected;
        m.lift = point.tp / (selected / (positives + negatives));
    }
    return m;
}

std::vector<ThresholdMetrics> threshold_curve_metrics(const RocCurve& curve,
                                                      double positives,
                                                      double negatives) {
    std::vector<ThresholdMetrics> out;
    if (curve.points.size() < 2) return out;
    for (std::size_t i = 1; i + 1 < curve.points.size(); ++i) {
        const auto& cp = curve.points[i];
        out.push_back({cp.threshold, cp.point, point_metrics(cp.point, positives, negatives)});
    }
    return out;
}

double auc(std::span<const RocPoint> polyline) {
    double area = 0.0;
    for (std::size_t i = 1; i < polyline.size(); ++i) {
        const auto& a = polyline[i - 1];
        const auto& b = polyline[i];
        area += (b.fp - a.fp) * (a.tp + b.tp) * 0.5;
    }
    return area;
}

double auc(const RocCurve& curve) {
    const auto pts = curve.roc_points();
    return auc(pts);
}

}  // namespace rocch

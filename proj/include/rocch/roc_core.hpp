#ifndef ROCCH_ROC_CORE_HPP
#define ROCCH_ROC_CORE_HPP

#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rocch {

/// Raised when input data violates a domain precondition (bad label,
/// non-finite score, degenerate class distribution, out-of-range point).
class DataError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class ClassLabel { positive, negative };

char to_char(ClassLabel label);
ClassLabel parse_label(std::string_view text);

struct ScoredExample {
    std::string example_id;
    ClassLabel label = ClassLabel::negative;
    double score = 0.0;  // higher = more positive
    double weight = 1.0;
};

/// A point in ROC space: false positive rate against true positive rate.
struct RocPoint {
    double fp = 0.0;
    double tp = 0.0;

    friend bool operator==(const RocPoint&, const RocPoint&) = default;
};

/// Throws DataError unless both coordinates are finite and in [0,1].
void validate(const RocPoint& p);

inline constexpr double kThresholdAbove = std::numeric_limits<double>::infinity();
inline constexpr double kThresholdBelow = -std::numeric_limits<double>::infinity();

struct CurvePoint {
    // Score of the last example tallied before this point was emitted.
    // The (0,0) endpoint carries kThresholdAbove, (1,1) carries kThresholdBelow.
    double threshold = 0.0;
    RocPoint point;
};

struct RocCurve {
    std::string classifier_id;
    std::vector<CurvePoint> points;

    std::vector<RocPoint> roc_points() const;
};

struct ConfusionCounts {
    double tp_count = 0.0;
    double fp_count = 0.0;
    double tn_count = 0.0;
    double fn_count = 0.0;

    double positives() const { return tp_count + fn_count; }
    double negatives() const { return fp_count + tn_count; }
};

/**
 * Builds the ROC curve of one scoring classifier in a single sweep.
 *
 * Examples are visited in decreasing score order; a point is emitted only
 * when the score changes, so a run of tied scores contributes one diagonal
 * segment instead of an order-dependent staircase. Weighted examples add
 * their weight to the tallies.
 *
 * Throws DataError on an empty set, a non-finite score, a non-positive
 * weight, or when one of the two classes is absent.
 */
RocCurve generate_roc_curve(std::span<const ScoredExample> examples,
                            std::string classifier_id);

RocPoint rates_from_counts(const ConfusionCounts& c);

/// Accuracy of an operating point under positive-class prior p_pos.
double accuracy(const RocPoint& point, double p_pos);

struct PointMetrics {
    std::optional<double> precision;  // absent when nothing is selected
    double recall = 0.0;
    std::optional<double> lift;
};

PointMetrics point_metrics(const RocPoint& point, double positives, double negatives);

struct ThresholdMetrics {
    double threshold = 0.0;
    RocPoint point;
    PointMetrics metrics;
};

/// Precision / recall / lift for every interior point of the curve.
std::vector<ThresholdMetrics> threshold_curve_metrics(const RocCurve& curve,
                                                      double positives,
                                                      double negatives);

/// Trapezoidal area under a piecewise-linear ROC polyline.
double auc(std::span<const RocPoint> polyline);
double auc(const RocCurve& curve);

}  // namespace rocch

#endif  // ROCCH_ROC_CORE_HPP

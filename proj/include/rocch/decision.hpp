#ifndef ROCCH_DECISION_HPP
#define ROCCH_DECISION_HPP

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "rocch/hull.hpp"
#include "rocch/roc_core.hpp"

namespace rocch {

inline constexpr double kInfiniteSlope = std::numeric_limits<double>::infinity();

/// Class prior and misclassification costs in force at deployment.
struct OperatingConditions {
    double p_pos = 0.5;    // p(p)
    double cost_fp = 1.0;  // c(Y, n)
    double cost_fn = 1.0;  // c(N, p)

    void validate() const;
};

struct SlopeRange {
    double lo = 0.0;
    double hi = kInfiniteSlope;
};

/// a * TP + b * FP <= c
struct LinearConstraint {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    void validate() const;
    double lhs(const RocPoint& p) const { return a * p.tp + b * p.fp; }
};

/// Expected number of selected cases TP*P + FP*N may not exceed `budget`.
struct Caseload {
    double positives = 0.0;
    double negatives = 0.0;
    double budget = 0.0;

    LinearConstraint constraint() const { return {positives, negatives, budget}; }
};

/// Slope of the iso-performance lines for the given conditions.
double iso_slope(const OperatingConditions& cond);

double expected_cost(const RocPoint& point, const OperatingConditions& cond);

/// The hull vertex with minimum expected cost. Ties go to the smaller fp.
const HullVertex& select_min_cost(const RocchHull& hull, const OperatingConditions& cond);

/// Posterior above which emitting a positive is cheaper in expectation.
/// Only meaningful when scores are calibrated posteriors.
double posterior_threshold(const OperatingConditions& cond);

/// Box of imprecisely known conditions; each field pair is an inclusive range.
struct ConditionBox {
    double p_pos_lo = 0.5, p_pos_hi = 0.5;
    double cost_fp_lo = 1.0, cost_fp_hi = 1.0;
    double cost_fn_lo = 1.0, cost_fn_hi = 1.0;
};

struct SensitivityReport {
    SlopeRange slopes;
    std::vector<HullVertex> vertices;  // fp ascending

    bool insensitive() const { return vertices.size() == 1; }
};

/// The iso-slope is monotone in each parameter, so the box corners bound it.
SensitivityReport sensitivity(const RocchHull& hull, const ConditionBox& box);

struct DominatorRow {
    SlopeRange range;
    HullVertex vertex;
};

struct DominatorTable {
    std::vector<DominatorRow> rows;  // slope ascending
};

/// One row per vertex with a non-empty optimal slope interval. A boundary
/// slope belongs to the vertex with the smaller fp.
DominatorTable dominator_table(const RocchHull& hull);

struct HullSelection {
    RocPoint point;
    HullLocation location;
};

/// Maximize TP subject to FP <= fp_max.
HullSelection select_neyman_pearson(const RocchHull& hull, double fp_max);

/// Maximize TP subject to a single linear constraint (inclusive).
/// Throws DataError if the constraint excludes even (0,0).
HullSelection select_constrained(const RocchHull& hull, const LinearConstraint& k);

using RocMetric = std::function<double(const RocPoint&)>;

/**
 * Maximize a caller-supplied metric f(FP, TP) over the hull, subject to any
 * number of linear constraints. Candidates are the feasible vertices plus
 * every intersection of a constraint line with a hull segment.
 *
 * The result is optimal over all classifiers only when f is non-increasing
 * in FP and non-decreasing in TP; that condition is the caller's to honor.
 */
HullSelection select_by_metric(const RocchHull& hull, const RocMetric& metric,
                               std::span<const LinearConstraint> constraints = {});

}  // namespace rocch

#endif  // ROCCH_DECISION_HPP

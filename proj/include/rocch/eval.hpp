#ifndef ROCCH_EVAL_HPP
#define ROCCH_EVAL_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rocch/decision.hpp"
#include "rocch/hull.hpp"
#include "rocch/roc_core.hpp"

namespace rocch {

struct Fold {
    std::string fold_id;
    std::vector<ScoredExample> examples;
};

/// Cross-validation folds of one classifier.
using FoldedScores = std::vector<Fold>;

/// TP of a curve at an fp value by linear interpolation; where the curve is
/// vertical at that fp, the highest tp is returned.
double curve_tp_at(const RocCurve& curve, double fp);

/**
 * Vertical averaging: every fold's curve is evaluated at each grid fp and
 * the tp values are averaged. Thresholds in the result carry no meaning and
 * are set to NaN.
 */
RocCurve average_roc(const FoldedScores& folds, std::span<const double> grid);

struct RankingPair {
    std::vector<ScoredExample> ranker_a;  // finds 20% of cases that are surely positive
    std::vector<ScoredExample> ranker_b;  // finds 20% of cases that are surely negative
};

/// Idealized pair of rankers over n balanced cases whose ROC curves cross
/// where n/2 cases are selected. n must be a positive multiple of 10.
RankingPair make_ranking_pair(std::size_t n);

/// Expected number of positives among the top `cutoff` cases. A tie group
/// straddling the cutoff contributes proportionally.
double expected_positives_at_cutoff(std::span<const ScoredExample> ranked, double cutoff);

/// Exhaustive minimum-expected-cost point, ties to the smaller fp.
RocPoint brute_force_best(std::span<const RocPoint> points, const OperatingConditions& cond);

/// Synthetic scorer with known ROC curve tp = 1 - (1 - fp)^exponent:
/// negative scores are U(0,1) and positive scores U(0,1)^(1/exponent).
std::vector<ScoredExample> make_power_scores(std::size_t positives, std::size_t negatives,
                                             double exponent, std::uint64_t seed);
double power_curve_tp(double fp, double exponent);

struct DriftEpoch {
    int epoch = 0;
    OperatingConditions conditions;
};

struct DriftScenario {
    std::vector<DriftEpoch> timeline;
};

struct DriftEpochReport {
    int epoch = 0;
    double slope = 0.0;
    HullVertex hybrid_vertex;
    double fixed_cost = 0.0;
    double hybrid_cost = 0.0;
    double oracle_cost = 0.0;  // brute force over every point the hull retains
    double regret = 0.0;       // fixed - hybrid
    double hybrid_regret = 0.0;  // hybrid - oracle
};

struct DriftReport {
    std::vector<DriftEpochReport> epochs;
    double cumulative_regret = 0.0;
    double cumulative_hybrid_regret = 0.0;
};

/// Expected cost per epoch of one fixed classifier versus the hybrid
/// re-resolved to each epoch's conditions.
DriftReport run_drift(const DriftScenario& scenario, const RocchHull& hull,
                      const OperatingPoint& fixed);

}  // namespace rocch

#endif  // ROCCH_EVAL_HPP

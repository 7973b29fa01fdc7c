#include "rocch/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "rocch/hybrid.hpp"
#include "rocch/random.hpp"

namespace rocch {

double curve_tp_at(const RocCurve& curve, double fp) {
    if (!(fp >= 0.0 && fp <= 1.0)) throw DataError("fp must lie in [0,1]");
    const auto& pts = curve.points;
    if (pts.empty()) throw DataError("empty curve");
    auto it = std::upper_bound(pts.begin(), pts.end(), fp,
                               [](double x, const CurvePoint& cp) { return x < cp.point.fp; });
    if (it == pts.begin()) return pts.front().point.tp;
    const auto& a = std::prev(it)->point;
    if (a.fp == fp || it == pts.end()) return a.tp;
    const auto& b = it->point;
    return a.tp + (fp - a.fp) * (b.tp - a.tp) / (b.fp - a.fp);
}

RocCurve average_roc(const FoldedScores& folds, std::span<const double> grid) {
    if (folds.size() < 2) throw DataError("vertical averaging needs at least two folds");
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw DataError("fp grid must be sorted ascending");
    for (double g : grid) {
        if (!(g >= 0.0 && g <= 1.0)) throw DataError("fp grid values must lie in [0,1]");
    }

    std::set<std::string, std::less<>> seen;
    std::vector<RocCurve> curves;
    for (const auto& fold : folds) {
        for (const auto& e : fold.examples) {
            if (!seen.insert(e.example_id).second)
                throw DataError("example '" + e.example_id + "' appears in more than one fold");
        }
        try {
            curves.push_back(generate_roc_curve(fold.examples, fold.fold_id));
        } catch (const DataError& err) {
            throw DataError("fold '" + fold.fold_id + "': " + err.what());
        }
    }

    RocCurve avg;
    avg.classifier_id = "average";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (double g : grid) {
        double sum = 0.0;
        for (const auto& c : curves) sum += curve_tp_at(c, g);
        avg.points.push_back({nan, {g, sum / static_cast<double>(curves.size())}});
    }
    return avg;
}

RankingPair make_ranking_pair(std::size_t n) {
    if (n == 0 || n % 10 != 0) throw DataError("ranking pair needs n to be a positive multiple of 10");
    const std::size_t half = n / 2;
    const std::size_t sure = n / 5;
    constexpr double kMixed = 0.5;  // one tie group = random order within it

    auto id = [](std::size_t j) { return "case" + std::to_string(j); };
    RankingPair pair;
    for (std::size_t j = 0; j < n; ++j) {
        const bool positive = j < half;
        const auto label = positive ? ClassLabel::positive : ClassLabel::negative;

        const bool a_sure = positive && j < sure;
        const double a_score = a_sure ? 1.0 + static_cast<double>(sure - j) : kMixed;
        pair.ranker_a.push_back({id(j), label, a_score, 1.0});

        const bool b_sure = !positive && j - half < sure;
        const double b_score = b_sure ? -1.0 - static_cast<double>(j - half) : kMixed;
        pair.ranker_b.push_back({id(j), label, b_score, 1.0});
    }
    return pair;
}

double expected_positives_at_cutoff(std::span<const ScoredExample> ranked, double cutoff) {
    std::vector<const ScoredExample*> sorted;
    for (const auto& e : ranked) sorted.push_back(&e);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto* a, const auto* b) { return a->score > b->score; });

    double taken = 0.0;
    double positives = 0.0;
    for (std::size_t i = 0; i < sorted.size() && taken < cutoff;) {
        double group = 0.0;
        double group_pos = 0.0;
        std::size_t j = i;
        for (; j < sorted.size() && sorted[j]->score == sorted[i]->score; ++j) {
            group += sorted[j]->weight;
            if (sorted[j]->label == ClassLabel::positive) group_pos += sorted[j]->weight;
        }
        const double take = std::min(group, cutoff - taken);
        positives += group_pos * (take / group);
        taken += take;
        i = j;
    }
    return positives;
}

RocPoint brute_force_best(std::span<const RocPoint> points, const OperatingConditions& cond) {
    if (points.empty()) throw DataError("no candidate points");
    RocPoint best = points.front();
    double best_cost = expected_cost(best, cond);
    for (const auto& p : points.subspan(1)) {
        const double c = expected_cost(p, cond);
        const double tol = 1e-12 * std::max(1.0, std::abs(best_cost));
        if (c < best_cost - tol || (std::abs(c - best_cost) <= tol && p.fp < best.fp)) {
            best = p;
            best_cost = c;
        }
    }
    return best;
}

std::vector<ScoredExample> make_power_scores(std::size_t positives, std::size_t negatives,
                                             double exponent, std::uint64_t seed) {
    if (!(exponent > 0.0)) throw DataError("exponent must be positive");
    Rng rng(seed);
    std::vector<ScoredExample> out;
    out.reserve(positives + negatives);
    for (std::size_t i = 0; i < positives; ++i) {
        const double u = unit_uniform(rng);
        out.push_back({"pos" + std::to_string(i), ClassLabel::positive, std::pow(u, 1.0 / exponent), 1.0});
    }
    for (std::size_t i = 0; i < negatives; ++i) {
        out.push_back({"neg" + std::to_string(i), ClassLabel::negative, unit_uniform(rng), 1.0});
    }
    return out;
}

double power_curve_tp(double fp, double exponent) {
    return 1.0 - std::pow(1.0 - fp, exponent);
}

DriftReport run_drift(const DriftScenario& scenario, const RocchHull& hull,
                      const OperatingPoint& fixed) {
    validate(fixed.point);
    std::vector<RocPoint> retained = hull.polyline();
    for (const auto& p : hull.on_hull()) retained.push_back(p.point);

    DriftReport report;
    for (const auto& step : scenario.timeline) {
        step.conditions.validate();
        const double x = x_from_conditions(hull, step.conditions);
        const auto policy = policy_for(hull, x);

        DriftEpochReport r;
        r.epoch = step.epoch;
        r.slope = iso_slope(step.conditions);
        r.hybrid_vertex = select_min_cost(hull, step.conditions);
        r.fixed_cost = expected_cost(fixed.point, step.conditions);
        r.hybrid_cost = expected_cost(policy.expected_rates(), step.conditions);
        r.oracle_cost = expected_cost(brute_force_best(retained, step.conditions), step.conditions);
        r.regret = r.fixed_cost - r.hybrid_cost;
        r.hybrid_regret = r.hybrid_cost - r.oracle_cost;
        report.cumulative_regret += r.regret;
        report.cumulative_hybrid_regret += r.hybrid_regret;
        report.epochs.push_back(std::move(r));
    }
    return report;
}

}  // namespace rocch

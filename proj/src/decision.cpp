#include "rocch/decision.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace rocch {

namespace {

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

double constraint_tolerance(const LinearConstraint& k) {
    return kHullEpsilon * std::max({1.0, std::abs(k.c), k.a, k.b});
}

bool satisfies(const LinearConstraint& k, const RocPoint& p) {
    return k.lhs(p) <= k.c + constraint_tolerance(k);
}

}  // namespace

void OperatingConditions::validate() const {
    if (!(std::isfinite(p_pos) && p_pos > 0.0 && p_pos < 1.0))
        throw DataError("prior p(p) must lie in (0,1)");
    if (!finite_positive(cost_fp) || !finite_positive(cost_fn))
        throw DataError("error costs must be finite and positive");
}

void LinearConstraint::validate() const {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c))
        throw DataError("constraint coefficients must be finite");
    if (a < 0.0 || b < 0.0) throw DataError("constraint coefficients must be >= 0");
    if (a == 0.0 && b == 0.0) throw DataError("constraint needs a non-zero coefficient");
}

double iso_slope(const OperatingConditions& cond) {
    cond.validate();
    // p(n)/p(p) written as 1/p - 1: exact for priors like 1/6.
    return cond.cost_fp * (1.0 / cond.p_pos - 1.0) / cond.cost_fn;
}

double expected_cost(const RocPoint& point, const OperatingConditions& cond) {
    cond.validate();
    return cond.p_pos * (1.0 - point.tp) * cond.cost_fn +
           (1.0 - cond.p_pos) * point.fp * cond.cost_fp;
}

const HullVertex& select_min_cost(const RocchHull& hull, const OperatingConditions& cond) {
    return slope_vertex(hull, iso_slope(cond));
}

double posterior_threshold(const OperatingConditions& cond) {
    if (!finite_positive(cond.cost_fp) || !finite_positive(cond.cost_fn))
        throw DataError("error costs must be finite and positive");
    return cond.cost_fp / (cond.cost_fp + cond.cost_fn);
}

SensitivityReport sensitivity(const RocchHull& hull, const ConditionBox& box) {
    if (box.p_pos_lo > box.p_pos_hi || box.cost_fp_lo > box.cost_fp_hi ||
        box.cost_fn_lo > box.cost_fn_hi)
        throw DataError("condition ranges must satisfy lo <= hi");

    SensitivityReport report{{kInfiniteSlope, 0.0}, {}};
    for (double p : {box.p_pos_lo, box.p_pos_hi}) {
        for (double cfp : {box.cost_fp_lo, box.cost_fp_hi}) {
            for (double cfn : {box.cost_fn_lo, box.cost_fn_hi}) {
                const double m = iso_slope({p, cfp, cfn});
                report.slopes.lo = std::min(report.slopes.lo, m);
                report.slopes.hi = std::max(report.slopes.hi, m);
            }
        }
    }
    const std::size_t first = slope_vertex_index(hull, report.slopes.hi);
    const std::size_t last = slope_vertex_index(hull, report.slopes.lo);
    for (std::size_t i = first; i <= last; ++i) report.vertices.push_back(hull.vertices()[i]);
    return report;
}

DominatorTable dominator_table(const RocchHull& hull) {
    const auto& v = hull.vertices();
    const auto& s = hull.slopes();
    DominatorTable table;
    for (std::size_t k = v.size(); k-- > 0;) {
        const double lo = k + 1 == v.size() ? 0.0 : s[k];
        const double hi = k == 0 ? kInfiniteSlope : s[k - 1];
        if (!(lo < hi)) continue;
        table.rows.push_back({{lo, hi}, v[k]});
    }
    return table;
}

HullSelection select_neyman_pearson(const RocchHull& hull, double fp_max) {
    if (!(fp_max >= 0.0 && fp_max <= 1.0)) throw DataError("fp_max must lie in [0,1]");
    const auto where = locate_fp(hull, fp_max);
    RocPoint p{fp_max, hull_tp_at(hull, fp_max)};
    if (where.is_vertex()) p = hull.vertices()[where.left].point;
    return {p, where};
}

HullSelection select_constrained(const RocchHull& hull, const LinearConstraint& k) {
    k.validate();
    if (k.c < 0.0) throw DataError("infeasible constraint: excludes (0,0)");

    const auto& v = hull.vertices();
    // TP and the constraint's left-hand side both grow along the hull, so the
    // answer is the furthest feasible point before TP stops increasing.
    std::size_t i = 0;
    while (i + 1 < v.size() && v[i + 1].point.tp > v[i].point.tp && satisfies(k, v[i + 1].point)) ++i;

    if (i + 1 == v.size() || !(v[i + 1].point.tp > v[i].point.tp)) {
        return {v[i].point, {i, i, 0.0}};
    }
    const double g0 = k.lhs(v[i].point);
    const double g1 = k.lhs(v[i + 1].point);
    const double s = std::clamp((k.c - g0) / (g1 - g0), 0.0, 1.0);
    const auto where = locate_on_segment(hull, i, s);
    return {point_at(hull, where), where};
}

HullSelection select_by_metric(const RocchHull& hull, const RocMetric& metric,
                               std::span<const LinearConstraint> constraints) {
    for (const auto& k : constraints) k.validate();
    auto feasible = [&](const RocPoint& p) {
        return std::all_of(constraints.begin(), constraints.end(),
                           [&](const LinearConstraint& k) { return satisfies(k, p); });
    };

    std::vector<HullSelection> candidates;
    const auto& v = hull.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (feasible(v[i].point)) candidates.push_back({v[i].point, {i, i, 0.0}});
    }
    for (const auto& k : constraints) {
        for (std::size_t i = 0; i + 1 < v.size(); ++i) {
            const double g0 = k.lhs(v[i].point) - k.c;
            const double g1 = k.lhs(v[i + 1].point) - k.c;
            if (!(g0 * g1 < 0.0)) continue;
            const auto where = locate_on_segment(hull, i, g0 / (g0 - g1));
            const auto p = point_at(hull, where);
            if (feasible(p)) candidates.push_back({p, where});
        }
    }
    if (candidates.empty()) throw DataError("constraints exclude the entire hull");

    const HullSelection* best = nullptr;
    double best_value = 0.0;
    for (const auto& c : candidates) {
        const double value = metric(c.point);
        if (best == nullptr || value > best_value + kHullEpsilon ||
            (std::abs(value - best_value) <= kHullEpsilon && c.point.fp < best->point.fp)) {
            best = &c;
            best_value = value;
        }
    }
    return *best;
}

}  // namespace rocch

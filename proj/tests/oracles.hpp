// Brute-force reference routes used only by the tests. Nothing here calls
// into the code paths it is used to check.
#ifndef ROCCH_TESTS_ORACLES_HPP
#define ROCCH_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rocch/decision.hpp"
#include "rocch/roc_core.hpp"

namespace oracle {

using rocch::ClassLabel;
using rocch::RocPoint;
using rocch::ScoredExample;

inline std::pair<double, double> class_totals(const std::vector<ScoredExample>& ex) {
    double pos = 0, neg = 0;
    for (const auto& e : ex) (e.label == ClassLabel::positive ? pos : neg) += e.weight;
    return {pos, neg};
}

/// ROC points by enumerating every distinct threshold t and counting the
/// examples with score >= t.
inline std::vector<RocPoint> threshold_sweep(const std::vector<ScoredExample>& ex) {
    const auto [pos, neg] = class_totals(ex);
    std::set<double, std::greater<>> thresholds;
    for (const auto& e : ex) thresholds.insert(e.score);
    std::vector<RocPoint> out{{0.0, 0.0}};
    for (double t : thresholds) {
        double tp = 0, fp = 0;
        for (const auto& e : ex) {
            if (e.score >= t) (e.label == ClassLabel::positive ? tp : fp) += e.weight;
        }
        out.push_back({fp / neg, tp / pos});
    }
    return out;
}

/// Step curve with ties broken optimistically (positives first) or
/// pessimistically. Returns every intermediate point plus, separately, the
/// indices at which a tie group ends.
struct OrderedCurve {
    std::vector<RocPoint> points;
    std::vector<std::size_t> group_ends;
};

inline OrderedCurve ordered_curve(std::vector<ScoredExample> ex, bool optimistic) {
    std::sort(ex.begin(), ex.end(), [&](const auto& a, const auto& b) {
        if (a.score != b.score) return a.score > b.score;
        const bool ap = a.label == ClassLabel::positive;
        const bool bp = b.label == ClassLabel::positive;
        return optimistic ? (ap && !bp) : (!ap && bp);
    });
    const auto [pos, neg] = class_totals(ex);
    OrderedCurve c;
    c.points.push_back({0, 0});
    double tp = 0, fp = 0;
    for (std::size_t i = 0; i < ex.size(); ++i) {
        (ex[i].label == ClassLabel::positive ? tp : fp) += ex[i].weight;
        c.points.push_back({fp / neg, tp / pos});
        if (i + 1 == ex.size() || ex[i + 1].score != ex[i].score) c.group_ends.push_back(c.points.size() - 1);
    }
    return c;
}

inline double polyline_area(const std::vector<RocPoint>& pts) {
    double a = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        a += (pts[i].fp - pts[i - 1].fp) * (pts[i].tp + pts[i - 1].tp) / 2;
    return a;
}

/// Weighted Mann-Whitney statistic, ties counted one half.
inline double mann_whitney_auc(const std::vector<ScoredExample>& ex) {
    const auto [pos, neg] = class_totals(ex);
    double u = 0;
    for (const auto& p : ex) {
        if (p.label != ClassLabel::positive) continue;
        for (const auto& n : ex) {
            if (n.label != ClassLabel::negative) continue;
            if (p.score > n.score) u += p.weight * n.weight;
            else if (p.score == n.score) u += 0.5 * p.weight * n.weight;
        }
    }
    return u / (pos * neg);
}

/// Upper-hull vertex set by the O(n^3) definition: (0,0) and (1,1) always
/// belong; any other point is a vertex iff it lies strictly above every
/// chord between two other points that spans its fp.
inline std::vector<RocPoint> frontier_vertices(std::vector<RocPoint> pts, double eps = 1e-12) {
    pts.push_back({0, 0});
    pts.push_back({1, 1});
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        return a.fp != b.fp ? a.fp < b.fp : a.tp < b.tp;
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<RocPoint> out;
    for (const auto& q : pts) {
        if (q == RocPoint{0, 0} || q == RocPoint{1, 1}) {
            out.push_back(q);
            continue;
        }
        bool vertex = true;
        for (const auto& a : pts) {
            if (!vertex) break;
            if (a == q || a.fp > q.fp) continue;
            for (const auto& b : pts) {
                if (b == q || b == a || b.fp < q.fp) continue;
                double chord;
                if (b.fp == a.fp) {
                    chord = std::max(a.tp, b.tp);
                } else {
                    chord = a.tp + (q.fp - a.fp) * (b.tp - a.tp) / (b.fp - a.fp);
                }
                // Chords are only meaningful when they span q's fp.
                if (chord >= q.tp - eps) {
                    vertex = false;
                    break;
                }
            }
        }
        if (vertex) out.push_back(q);
    }
    return out;
}

inline double expected_cost(const RocPoint& p, const rocch::OperatingConditions& c) {
    return c.p_pos * (1 - p.tp) * c.cost_fn + (1 - c.p_pos) * p.fp * c.cost_fp;
}

/// Best TP under a*TP + b*FP <= c, over the raw points and over dense samples
/// (step 1e-4 in the segment parameter) of the given polyline.
inline double constrained_best_tp(const std::vector<RocPoint>& points,
                                  const std::vector<RocPoint>& polyline,
                                  const rocch::LinearConstraint& k, double step = 1e-4) {
    double best = 0;
    auto consider = [&](const RocPoint& p) {
        if (k.a * p.tp + k.b * p.fp <= k.c + 1e-12) best = std::max(best, p.tp);
    };
    for (const auto& p : points) consider(p);
    for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
        const auto& a = polyline[i];
        const auto& b = polyline[i + 1];
        for (double s = 0; s <= 1.0; s += step) consider({a.fp + s * (b.fp - a.fp), a.tp + s * (b.tp - a.tp)});
        consider(b);
    }
    return best;
}

/// Random labeled scores with deliberate ties (scores drawn from a small grid).
inline std::vector<ScoredExample> random_examples(std::mt19937_64& rng, std::size_t max_n,
                                                  int score_levels, bool integer_weights = false) {
    std::uniform_int_distribution<std::size_t> n_dist(2, max_n);
    std::uniform_int_distribution<int> level(0, score_levels - 1);
    std::uniform_int_distribution<int> w(1, 4);
    std::bernoulli_distribution coin(0.5);
    const std::size_t n = n_dist(rng);
    std::vector<ScoredExample> ex;
    for (std::size_t i = 0; i < n; ++i) {
        ex.push_back({"e" + std::to_string(i), coin(rng) ? ClassLabel::positive : ClassLabel::negative,
                      level(rng) / double(score_levels), integer_weights ? double(w(rng)) : 1.0});
    }
    ex[0].label = ClassLabel::positive;
    ex[1].label = ClassLabel::negative;
    return ex;
}

inline std::vector<RocPoint> random_points(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<RocPoint> pts;
    for (std::size_t i = 0; i < n; ++i) {
        const double fp = u(rng);
        // Bias toward the upper-left so hulls have several vertices.
        const double tp = std::min(1.0, fp + (1.0 - fp) * u(rng));
        pts.push_back({fp, tp});
    }
    return pts;
}

}  // namespace oracle

#endif  // ROCCH_TESTS_ORACLES_HPP

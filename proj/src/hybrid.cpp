#include "rocch/hybrid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace rocch {

char to_char(Prediction p) { return p == Prediction::yes ? 'Y' : 'N'; }

ComponentClassifier ComponentClassifier::from_vertex(const HullVertex& vertex) {
    const auto& src = vertex.source;
    switch (src.kind) {
    case Provenance::Kind::never_alarm: return {{}, Kind::constant_negative, kThresholdAbove};
    case Provenance::Kind::always_alarm: return {{}, Kind::constant_positive, kThresholdBelow};
    case Provenance::Kind::classifier: break;
    }
    if (src.threshold == kThresholdAbove) return {src.classifier_id, Kind::constant_negative, src.threshold};
    if (src.threshold == kThresholdBelow) return {src.classifier_id, Kind::constant_positive, src.threshold};
    return {src.classifier_id, Kind::scored, src.threshold};
}

Prediction ComponentClassifier::decide(double score) const {
    switch (kind) {
    case Kind::constant_negative: return Prediction::no;
    case Kind::constant_positive: return Prediction::yes;
    case Kind::scored: break;
    }
    return score >= threshold ? Prediction::yes : Prediction::no;
}

std::string ComponentClassifier::describe() const {
    if (kind == Kind::scored) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", threshold);
        return classifier_id + "@" + buf;
    }
    const bool positive = kind == Kind::constant_positive;
    if (classifier_id.empty()) return positive ? "always-alarm" : "never-alarm";
    return classifier_id + (positive ? "@-inf" : "@+inf");
}

RocPoint HybridPolicy::expected_rates() const {
    if (const auto* v = std::get_if<VertexResolution>(&resolution)) return v->vertex.point;
    const auto& m = std::get<MixtureResolution>(resolution);
    const auto& a = m.left.point;
    const auto& b = m.right.point;
    return {a.fp + m.weight * (b.fp - a.fp), a.tp + m.weight * (b.tp - a.tp)};
}

HybridPolicy policy_for(const RocchHull& hull, double x) {
    const auto where = locate_fp(hull, x);
    const auto& v = hull.vertices();
    if (where.is_vertex()) return {x, VertexResolution{v[where.left]}};
    return {x, MixtureResolution{v[where.left], v[where.right], where.weight}};
}

namespace {

Prediction run_component(const ComponentClassifier& c, const ScoreLookup& scores) {
    if (!c.needs_score()) return c.decide(0.0);
    return c.decide(scores.find(c.classifier_id)->second);
}

void require_score(const ComponentClassifier& c, const ScoreLookup& scores) {
    if (c.needs_score() && scores.find(c.classifier_id) == scores.end())
        throw DataError("missing score for classifier '" + c.classifier_id + "'");
}

}  // namespace

ClassifyResult classify(const HybridPolicy& policy, const ScoreLookup& scores, Rng& rng) {
    if (const auto* v = std::get_if<VertexResolution>(&policy.resolution)) {
        const auto c = ComponentClassifier::from_vertex(v->vertex);
        require_score(c, scores);
        return {run_component(c, scores), c.describe(), std::nullopt};
    }
    const auto& m = std::get<MixtureResolution>(policy.resolution);
    const auto left = ComponentClassifier::from_vertex(m.left);
    const auto right = ComponentClassifier::from_vertex(m.right);
    require_score(left, scores);
    require_score(right, scores);

    const bool use_right = unit_uniform(rng) < m.weight;
    const auto& chosen = use_right ? right : left;
    return {run_component(chosen, scores), chosen.describe(), use_right};
}

double x_from_conditions(const RocchHull& hull, const TargetCondition& target) {
    return std::visit(
        [&](const auto& t) -> double {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, OperatingConditions>) {
                return select_min_cost(hull, t).point.fp;
            } else if constexpr (std::is_same_v<T, FpLimit>) {
                if (!(t.fp_max >= 0.0 && t.fp_max <= 1.0)) throw DataError("fp_max must lie in [0,1]");
                return t.fp_max;
            } else if constexpr (std::is_same_v<T, Caseload>) {
                if (!(t.positives > 0.0) || !(t.negatives > 0.0))
                    throw DataError("caseload class totals must be positive");
                return select_constrained(hull, t.constraint()).point.fp;
            } else {
                return select_constrained(hull, t).point.fp;
            }
        },
        target);
}

HybridPolicy tune(const RocchHull& hull, const HybridPolicy& policy,
                  const FeedbackSignal& feedback, double step) {
    if (!(step > 0.0 && step <= 1.0)) throw DataError("knob step must lie in (0,1]");
    double move = step;
    if (feedback.magnitude) move = std::min(move, std::abs(*feedback.magnitude));

    double x = policy.x;
    switch (feedback.direction) {
    case Feedback::too_many_false_alarms: x = std::max(0.0, x - move); break;
    case Feedback::too_few_cases: x = std::min(1.0, x + move); break;
    case Feedback::acceptable: break;
    }
    return policy_for(hull, x);
}

KnobState tune(const RocchHull& hull, const KnobState& state, const FeedbackSignal& feedback) {
    KnobState next = state;
    if (feedback.direction == Feedback::acceptable) {
        next.step = state.step / 2.0;
        next.last = Feedback::acceptable;
        return next;
    }
    if (state.last != Feedback::acceptable && state.last != feedback.direction) next.step /= 2.0;
    next.policy = tune(hull, state.policy, feedback, next.step);
    next.last = feedback.direction;
    return next;
}

}  // namespace rocch

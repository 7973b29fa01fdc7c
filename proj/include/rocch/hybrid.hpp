#ifndef ROCCH_HYBRID_HPP
#define ROCCH_HYBRID_HPP

#include <map>
#include <optional>
#include <string>
#include <variant>

#include "rocch/decision.hpp"
#include "rocch/hull.hpp"
#include "rocch/random.hpp"

namespace rocch {

enum class Prediction { yes, no };

char to_char(Prediction p);

/// A runnable decision rule recovered from a hull vertex's provenance.
struct ComponentClassifier {
    enum class Kind { scored, constant_negative, constant_positive };

    std::string classifier_id;
    Kind kind = Kind::scored;
    double threshold = 0.0;  // scored kind: predict Y iff score >= threshold

    /// Curve endpoints at +inf / -inf thresholds become constant rules.
    static ComponentClassifier from_vertex(const HullVertex& vertex);

    bool needs_score() const { return kind == Kind::scored; }
    Prediction decide(double score) const;
    std::string describe() const;
};

struct VertexResolution {
    HullVertex vertex;
};

struct MixtureResolution {
    HullVertex left;
    HullVertex right;
    double weight = 0.0;  // probability of deferring to `right`
};

/// The hybrid classifier pinned at one target false positive rate.
struct HybridPolicy {
    double x = 0.0;
    std::variant<VertexResolution, MixtureResolution> resolution;

    bool is_mixture() const { return std::holds_alternative<MixtureResolution>(resolution); }
    /// (FP, TP) the policy realizes in expectation, given component rates.
    RocPoint expected_rates() const;
};

HybridPolicy policy_for(const RocchHull& hull, double x);

using ScoreLookup = std::map<std::string, double, std::less<>>;

struct ClassifyResult {
    Prediction prediction = Prediction::no;
    std::string component;
    std::optional<bool> chose_right;  // set only for mixtures
};

/**
 * Classify one instance. A mixture flips an independent weighted coin per
 * call and defers to the right vertex with probability `weight`; pure
 * vertices never touch the generator.
 *
 * Throws DataError if a scored component the policy references has no
 * entry in `scores`, whichever side the coin picks.
 */
ClassifyResult classify(const HybridPolicy& policy, const ScoreLookup& scores, Rng& rng);

struct FpLimit {
    double fp_max = 0.0;
};

using TargetCondition = std::variant<OperatingConditions, FpLimit, Caseload, LinearConstraint>;

/// Translate run-time conditions to the knob setting x.
double x_from_conditions(const RocchHull& hull, const TargetCondition& target);

enum class Feedback { too_many_false_alarms, too_few_cases, acceptable };

struct FeedbackSignal {
    Feedback direction = Feedback::acceptable;
    std::optional<double> magnitude;  // caps the size of the move
};

/// One knob move: left on false alarms, right on too few cases, clamped to [0,1].
HybridPolicy tune(const RocchHull& hull, const HybridPolicy& policy,
                  const FeedbackSignal& feedback, double step);

/// Knob state for hill-climbing. The step halves when the environment
/// reports "acceptable" and when the requested direction reverses.
struct KnobState {
    HybridPolicy policy;
    double step = 0.25;
    Feedback last = Feedback::acceptable;
};

KnobState tune(const RocchHull& hull, const KnobState& state, const FeedbackSignal& feedback);

}  // namespace rocch

#endif  // ROCCH_HYBRID_HPP

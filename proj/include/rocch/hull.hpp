#ifndef ROCCH_HULL_HPP
#define ROCCH_HULL_HPP

#include <compare>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rocch/roc_core.hpp"

namespace rocch {

/// Absolute tolerance for cross-product collinearity tests on unit-square
/// coordinates, and for matching an fp value against a vertex.
inline constexpr double kHullEpsilon = 1e-12;

/// Where an operating point came from: a threshold on a named scoring
/// classifier (or a binary classifier, whose threshold is irrelevant), or
/// one of the two trivial strategies that pin the hull endpoints.
struct Provenance {
    enum class Kind { never_alarm, always_alarm, classifier };

    Kind kind = Kind::classifier;
    std::string classifier_id;
    double threshold = 0.0;

    static Provenance never_alarm() { return {Kind::never_alarm, {}, kThresholdAbove}; }
    static Provenance always_alarm() { return {Kind::always_alarm, {}, kThresholdBelow}; }
    static Provenance classifier(std::string id, double threshold) {
        return {Kind::classifier, std::move(id), threshold};
    }

    bool is_degenerate() const { return kind != Kind::classifier; }
    std::string describe() const;

    friend bool operator==(const Provenance&, const Provenance&) = default;
    friend std::strong_ordering operator<=>(const Provenance& a, const Provenance& b);
};

struct OperatingPoint {
    RocPoint point;
    Provenance source;

    friend bool operator==(const OperatingPoint&, const OperatingPoint&) = default;
};

using HullVertex = OperatingPoint;

/// Every threshold of a curve becomes one labeled operating point.
std::vector<OperatingPoint> operating_points(const RocCurve& curve);

using HullInput = std::variant<RocCurve, OperatingPoint>;

/**
 * ROC convex hull: the upper concave frontier from (0,0) to (1,1).
 *
 * Vertices are ordered by fp. The only place two vertices share an fp is a
 * vertical first segment (0,0)->(0,t), whose slope is +infinity. Points that
 * sit on a hull segment without being a vertex (collinear points, coincident
 * duplicates) are kept in on_hull() so their classifiers are not lost.
 */
class RocchHull {
public:
    /// The random-guess diagonal.
    RocchHull();

    /// Reassembles a hull from stored parts, e.g. after loading from disk.
    /// Slopes are recomputed; throws DataError if the vertices do not form a
    /// valid concave frontier (checked with `tolerance` on the cross product).
    static RocchHull from_parts(std::vector<HullVertex> vertices,
                                std::vector<OperatingPoint> on_hull,
                                double tolerance = 1e-9);

    const std::vector<HullVertex>& vertices() const { return vertices_; }
    const std::vector<double>& slopes() const { return slopes_; }
    const std::vector<OperatingPoint>& on_hull() const { return on_hull_; }

    std::vector<RocPoint> polyline() const;

private:
    friend RocchHull build_hull(std::span<const OperatingPoint> points);

    std::vector<HullVertex> vertices_;
    std::vector<double> slopes_;
    std::vector<OperatingPoint> on_hull_;

    void compute_slopes();
};

RocchHull build_hull(std::span<const OperatingPoint> points);
RocchHull build_hull(std::span<const HullInput> inputs);

struct InsertResult {
    RocchHull hull;
    bool extended = false;  // true iff the set of vertex locations changed
};

/// Same result as rebuilding from every point ever inserted. Points found
/// strictly below the hull are dropped.
InsertResult insert(const RocchHull& hull, const HullInput& input);

/// Hull TP at a given FP. At fp = 0 with a vertical first segment the
/// highest vertex is used.
double hull_tp_at(const RocchHull& hull, double fp);

double auc(const RocchHull& hull);

/// Index of the vertex where an iso-performance line of slope m touches
/// the hull. A segment of slope exactly m resolves to its left endpoint.
std::size_t slope_vertex_index(const RocchHull& hull, double m);
const HullVertex& slope_vertex(const RocchHull& hull, double m);

/// A point on the hull expressed as a vertex (left == right) or as a
/// fraction `weight` of the way from vertex `left` to vertex `right`.
struct HullLocation {
    std::size_t left = 0;
    std::size_t right = 0;
    double weight = 0.0;

    bool is_vertex() const { return left == right; }
};

HullLocation locate_fp(const RocchHull& hull, double fp);
HullLocation locate_on_segment(const RocchHull& hull, std::size_t segment, double fraction);
RocPoint point_at(const RocchHull& hull, const HullLocation& where);

}  // namespace rocch

#endif  // ROCCH_HULL_HPP

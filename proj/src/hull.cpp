#include "rocch/hull.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace rocch {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// > 0 for a counter-clockwise turn o->a->b.
double cross(const RocPoint& o, const RocPoint& a, const RocPoint& b) {
    return (a.fp - o.fp) * (b.tp - o.tp) - (a.tp - o.tp) * (b.fp - o.fp);
}

bool same_location(const RocPoint& a, const RocPoint& b) {
    return a.fp == b.fp && a.tp == b.tp;
}

bool by_location(const OperatingPoint& a, const OperatingPoint& b) {
    if (a.point.fp != b.point.fp) return a.point.fp < b.point.fp;
    if (a.point.tp != b.point.tp) return a.point.tp < b.point.tp;
    return a.source < b.source;
}

// Whether q lies on one of the hull's segments (within kHullEpsilon).
bool lies_on(const std::vector<HullVertex>& vertices, const RocPoint& q) {
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
        const auto& a = vertices[i].point;
        const auto& b = vertices[i + 1].point;
        if (q.fp < a.fp - kHullEpsilon || q.fp > b.fp + kHullEpsilon) continue;
        if (a.fp == b.fp) {
            if (std::abs(q.fp - a.fp) <= kHullEpsilon && q.tp >= a.tp - kHullEpsilon &&
                q.tp <= b.tp + kHullEpsilon)
                return true;
            continue;
        }
        if (std::abs(cross(a, b, q)) <= kHullEpsilon) return true;
    }
    return false;
}

}  // namespace

std::strong_ordering operator<=>(const Provenance& a, const Provenance& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (auto c = a.classifier_id <=> b.classifier_id; c != 0) return c;
    if (a.threshold < b.threshold) return std::strong_ordering::less;
    if (a.threshold > b.threshold) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Provenance::describe() const {
    switch (kind) {
    case Kind::never_alarm: return "never-alarm";
    case Kind::always_alarm: return "always-alarm";
    case Kind::classifier: break;
    }
    if (threshold == kThresholdAbove) return classifier_id + "@+inf";
    if (threshold == kThresholdBelow) return classifier_id + "@-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", threshold);
    return classifier_id + "@" + buf;
}

std::vector<OperatingPoint> operating_points(const RocCurve& curve) {
    std::vector<OperatingPoint> out;
    out.reserve(curve.points.size());
    for (const auto& cp : curve.points) {
        out.push_back({cp.point, Provenance::classifier(curve.classifier_id, cp.threshold)});
    }
    return out;
}

RocchHull::RocchHull()
    : vertices_{{{0.0, 0.0}, Provenance::never_alarm()}, {{1.0, 1.0}, Provenance::always_alarm()}} {
    compute_slopes();
}

void RocchHull::compute_slopes() {
    slopes_.clear();
    for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
        const auto& a = vertices_[i].point;
        const auto& b = vertices_[i + 1].point;
        const double dx = b.fp - a.fp;
        slopes_.push_back(dx > 0.0 ? (b.tp - a.tp) / dx : kInf);
    }
}

std::vector<RocPoint> RocchHull::polyline() const {
    std::vector<RocPoint> out;
    out.reserve(vertices_.size());
    for (const auto& v : vertices_) out.push_back(v.point);
    return out;
}

RocchHull RocchHull::from_parts(std::vector<HullVertex> vertices,
                                std::vector<OperatingPoint> on_hull,
                                double tolerance) {
    if (vertices.size() < 2) throw DataError("hull needs at least two vertices");
    for (const auto& v : vertices) validate(v.point);
    for (const auto& p : on_hull) validate(p.point);
    if (!(vertices.front().point == RocPoint{0.0, 0.0}) ||
        !(vertices.back().point == RocPoint{1.0, 1.0}))
        throw DataError("hull must start at (0,0) and end at (1,1)");
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        const auto& a = vertices[i - 1].point;
        const auto& b = vertices[i].point;
        const bool vertical_start = i == 1 && a.fp == b.fp && b.tp > a.tp;
        if (!(b.fp > a.fp) && !vertical_start) throw DataError("hull vertices must have increasing fp");
        if (b.tp < a.tp) throw DataError("hull vertices must have non-decreasing tp");
        if (i + 1 < vertices.size() && cross(a, b, vertices[i + 1].point) >= tolerance)
            throw DataError("hull vertices are not concave");
    }
    RocchHull h;
    h.vertices_ = std::move(vertices);
    h.on_hull_ = std::move(on_hull);
    h.compute_slopes();
    return h;
}

RocchHull build_hull(std::span<const OperatingPoint> points) {
    for (const auto& p : points) validate(p.point);

    std::vector<OperatingPoint> all(points.begin(), points.end());
    all.push_back({{0.0, 0.0}, Provenance::never_alarm()});
    all.push_back({{1.0, 1.0}, Provenance::always_alarm()});
    std::sort(all.begin(), all.end(), by_location);
    all.erase(std::unique(all.begin(), all.end()), all.end());

    // One representative per location: the first in provenance order, which
    // puts the degenerate endpoint strategies ahead of classifiers.
    std::vector<OperatingPoint> reps;
    std::vector<OperatingPoint> extras;
    for (auto& p : all) {
        if (!reps.empty() && same_location(reps.back().point, p.point)) {
            extras.push_back(std::move(p));
        } else {
            reps.push_back(std::move(p));
        }
    }

    // Andrew's monotone chain, upper half only. Collinear middle points are
    // popped and end up in the on-hull record below.
    std::vector<HullVertex> chain;
    for (auto& p : reps) {
        while (chain.size() >= 2 &&
               cross(chain[chain.size() - 2].point, chain.back().point, p.point) >= -kHullEpsilon) {
            extras.push_back(std::move(chain.back()));
            chain.pop_back();
        }
        chain.push_back(std::move(p));
    }

    RocchHull hull;
    hull.vertices_ = std::move(chain);
    hull.compute_slopes();
    for (auto& p : extras) {
        if (lies_on(hull.vertices_, p.point)) hull.on_hull_.push_back(std::move(p));
    }
    std::sort(hull.on_hull_.begin(), hull.on_hull_.end(), by_location);
    return hull;
}

RocchHull build_hull(std::span<const HullInput> inputs) {
    std::vector<OperatingPoint> points;
    for (const auto& in : inputs) {
        if (const auto* curve = std::get_if<RocCurve>(&in)) {
            auto ops = operating_points(*curve);
            points.insert(points.end(), ops.begin(), ops.end());
        } else {
            points.push_back(std::get<OperatingPoint>(in));
        }
    }
    return build_hull(points);
}

InsertResult insert(const RocchHull& hull, const HullInput& input) {
    std::vector<OperatingPoint> points;
    for (const auto& v : hull.vertices()) {
        if (!v.source.is_degenerate()) points.push_back(v);
    }
    points.insert(points.end(), hull.on_hull().begin(), hull.on_hull().end());
    if (const auto* curve = std::get_if<RocCurve>(&input)) {
        auto ops = operating_points(*curve);
        points.insert(points.end(), ops.begin(), ops.end());
    } else {
        points.push_back(std::get<OperatingPoint>(input));
    }

    InsertResult result{build_hull(points), false};
    const auto before = hull.polyline();
    const auto after = result.hull.polyline();
    result.extended = before != after;
    return result;
}

double hull_tp_at(const RocchHull& hull, double fp) {
    if (!(fp >= 0.0 && fp <= 1.0)) throw DataError("fp must lie in [0,1]");
    const auto& v = hull.vertices();
    // Last vertex with vertex.fp <= fp.
    auto it = std::upper_bound(v.begin(), v.end(), fp,
                               [](double x, const HullVertex& hv) { return x < hv.point.fp; });
    const std::size_t i = static_cast<std::size_t>(std::distance(v.begin(), it)) - 1;
    if (v[i].point.fp == fp || i + 1 == v.size()) return v[i].point.tp;
    const auto& a = v[i].point;
    const auto& b = v[i + 1].point;
    return a.tp + (fp - a.fp) * (b.tp - a.tp) / (b.fp - a.fp);
}

double auc(const RocchHull& hull) {
    const auto pts = hull.polyline();
    return auc(pts);
}

std::size_t slope_vertex_index(const RocchHull& hull, double m) {
    if (!(m >= 0.0)) throw DataError("iso-performance slope must be >= 0");
    const auto& slopes = hull.slopes();
    const double tol = kHullEpsilon * std::max(1.0, std::isfinite(m) ? m : 1.0);
    for (std::size_t i = 0; i < slopes.size(); ++i) {
        if (slopes[i] <= m + tol) return i;
    }
    return hull.vertices().size() - 1;
}

const HullVertex& slope_vertex(const RocchHull& hull, double m) {
    return hull.vertices()[slope_vertex_index(hull, m)];
}

HullLocation locate_fp(const RocchHull& hull, double fp) {
    if (!(fp >= 0.0 && fp <= 1.0)) throw DataError("fp must lie in [0,1]");
    const auto& v = hull.vertices();
    auto it = std::upper_bound(v.begin(), v.end(), fp + kHullEpsilon,
                               [](double x, const HullVertex& hv) { return x < hv.point.fp; });
    const std::size_t i = static_cast<std::size_t>(std::distance(v.begin(), it)) - 1;
    if (std::abs(v[i].point.fp - fp) <= kHullEpsilon || i + 1 == v.size()) return {i, i, 0.0};
    const double w = (fp - v[i].point.fp) / (v[i + 1].point.fp - v[i].point.fp);
    return {i, i + 1, w};
}

HullLocation locate_on_segment(const RocchHull& hull, std::size_t segment, double fraction) {
    if (segment + 1 >= hull.vertices().size()) throw DataError("segment index out of range");
    if (fraction <= kHullEpsilon) return {segment, segment, 0.0};
    if (fraction >= 1.0 - kHullEpsilon) return {segment + 1, segment + 1, 0.0};
    return {segment, segment + 1, fraction};
}

RocPoint point_at(const RocchHull& hull, const HullLocation& where) {
    const auto& a = hull.vertices().at(where.left).point;
    if (where.is_vertex()) return a;
    const auto& b = hull.vertices().at(where.right).point;
    return {a.fp + where.weight * (b.fp - a.fp), a.tp + where.weight * (b.tp - a.tp)};
}

}  // namespace rocch

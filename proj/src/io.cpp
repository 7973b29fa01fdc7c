#include "rocch/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace rocch::io {

using Json = nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;
constexpr std::string_view kHeader = "classifier,example,label,score";
constexpr std::string_view kHeaderWeighted = "classifier,example,label,score,weight";

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(trim(line.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::optional<double> parse_double(std::string_view s) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) return std::nullopt;
    return v;
}

// Measurements are stored at 12 significant digits.
double round12(double v) {
    if (!std::isfinite(v)) return v;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

Json number_or_inf(double v) {
    if (v == std::numeric_limits<double>::infinity()) return "inf";
    return round12(v);
}

double read_number_or_inf(const Json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    if (!j.is_number()) throw DataError("expected a number or \"inf\"");
    return j.get<double>();
}

Json threshold_json(double t) {
    if (t == kThresholdAbove) return "+inf";
    if (t == kThresholdBelow) return "-inf";
    if (std::isnan(t)) return nullptr;
    return t;
}

double read_threshold(const Json& j) {
    if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "+inf") return kThresholdAbove;
        if (s == "-inf") return kThresholdBelow;
        throw DataError("bad threshold '" + s + "'");
    }
    if (!j.is_number()) throw DataError("threshold must be a number, \"+inf\" or \"-inf\"");
    return j.get<double>();
}

Json operating_point_json(const OperatingPoint& p) {
    Json j;
    j["fp"] = round12(p.point.fp);
    j["tp"] = round12(p.point.tp);
    switch (p.source.kind) {
    case Provenance::Kind::never_alarm: j["degenerate"] = "never_alarm"; break;
    case Provenance::Kind::always_alarm: j["degenerate"] = "always_alarm"; break;
    case Provenance::Kind::classifier:
        j["classifier"] = p.source.classifier_id;
        j["threshold"] = threshold_json(p.source.threshold);
        break;
    }
    return j;
}

OperatingPoint read_operating_point(const Json& j) {
    OperatingPoint p;
    p.point = {j.at("fp").get<double>(), j.at("tp").get<double>()};
    validate(p.point);
    if (j.contains("degenerate")) {
        const auto kind = j.at("degenerate").get<std::string>();
        if (kind == "never_alarm") {
            p.source = Provenance::never_alarm();
        } else if (kind == "always_alarm") {
            p.source = Provenance::always_alarm();
        } else {
            throw DataError("unknown degenerate classifier '" + kind + "'");
        }
    } else {
        p.source = Provenance::classifier(j.at("classifier").get<std::string>(),
                                          read_threshold(j.at("threshold")));
    }
    return p;
}

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw DataError(std::string("malformed JSON: ") + e.what());
    }
}

template <typename F>
auto with_json_errors(F&& f) {
    try {
        return f();
    } catch (const Json::exception& e) {
        throw DataError(std::string("invalid document: ") + e.what());
    }
}

void check_header(const Json& j, std::string_view kind) {
    if (!j.is_object() || j.value("kind", std::string{}) != kind)
        throw DataError("expected a document of kind '" + std::string(kind) + "'");
    if (j.value("schema_version", 0) != kSchemaVersion)
        throw DataError("unsupported schema_version");
}

std::string range_text(const SlopeRange& r) {
    const bool open = std::isinf(r.hi);
    return "[" + format_number(r.lo) + ", " + format_number(r.hi) + (open ? ")" : "]");
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& message)
    : DataError("line " + std::to_string(line) + ": " + message), line_(line) {}

ScoreFile parse_score_file(std::string_view text) {
    ScoreFile file;
    std::set<std::pair<std::string, std::string>, std::less<>> seen;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto nl = text.find('\n', start);
        const auto raw = text.substr(start, nl == std::string_view::npos ? text.size() - start : nl - start);
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        const auto line = trim(raw);
        if (line.empty()) continue;

        if (!header_seen) {
            if (line == kHeader) {
                file.has_weight = false;
            } else if (line == kHeaderWeighted) {
                file.has_weight = true;
            } else {
                throw ParseError(line_no, "expected header '" + std::string(kHeader) + "[,weight]'");
            }
            header_seen = true;
            continue;
        }

        const auto fields = split(line, ',');
        const std::size_t expected = file.has_weight ? 5 : 4;
        if (fields.size() != expected) {
            throw ParseError(line_no, "expected " + std::to_string(expected) + " columns, found " +
                                          std::to_string(fields.size()));
        }
        ScoreRow row;
        row.classifier_id = std::string(fields[0]);
        row.example_id = std::string(fields[1]);
        if (row.classifier_id.empty() || row.example_id.empty())
            throw ParseError(line_no, "empty classifier or example id");
        try {
            row.label = parse_label(fields[2]);
        } catch (const DataError& e) {
            throw ParseError(line_no, e.what());
        }
        row.score_text = std::string(fields[3]);
        const auto score = parse_double(fields[3]);
        if (!score || !std::isfinite(*score))
            throw ParseError(line_no, "score '" + row.score_text + "' is not a finite number");
        row.score = *score;
        if (file.has_weight && !fields[4].empty()) {
            row.weight_text = std::string(fields[4]);
            const auto w = parse_double(fields[4]);
            if (!w || !std::isfinite(*w) || *w <= 0.0)
                throw ParseError(line_no, "weight '" + row.weight_text + "' must be a positive number");
            row.weight = *w;
        }
        if (!seen.emplace(row.classifier_id, row.example_id).second) {
            throw ParseError(line_no, "duplicate example '" + row.example_id + "' for classifier '" +
                                          row.classifier_id + "'");
        }
        file.rows.push_back(std::move(row));
    }
    if (!header_seen) throw ParseError(1, "missing header");
    return file;
}

std::string serialize(const ScoreFile& file) {
    std::string out(file.has_weight ? kHeaderWeighted : kHeader);
    out += '\n';
    for (const auto& r : file.rows) {
        out += r.classifier_id;
        out += ',';
        out += r.example_id;
        out += ',';
        out += to_char(r.label);
        out += ',';
        out += r.score_text;
        if (file.has_weight) {
            out += ',';
            out += r.weight_text;
        }
        out += '\n';
    }
    return out;
}

ScoresByClassifier group_by_classifier(const ScoreFile& file) {
    ScoresByClassifier out;
    for (const auto& r : file.rows) {
        out[r.classifier_id].push_back({r.example_id, r.label, r.score, r.weight.value_or(1.0)});
    }
    return out;
}

ScoresByClassifier parse_scores(std::string_view text) {
    return group_by_classifier(parse_score_file(text));
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
    return buf;
}

std::string write_curves_json(std::span<const RocCurve> curves) {
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["kind"] = "curves";
    doc["curves"] = Json::array();
    for (const auto& c : curves) {
        Json jc;
        jc["classifier"] = c.classifier_id;
        jc["points"] = Json::array();
        for (const auto& cp : c.points) {
            jc["points"].push_back(
                {{"fp", round12(cp.point.fp)}, {"tp", round12(cp.point.tp)}, {"threshold", threshold_json(cp.threshold)}});
        }
        doc["curves"].push_back(std::move(jc));
    }
    return doc.dump(2) + "\n";
}

std::vector<RocCurve> read_curves_json(std::string_view text) {
    const auto doc = parse_json(text);
    return with_json_errors([&] {
        check_header(doc, "curves");
        std::vector<RocCurve> curves;
        for (const auto& jc : doc.at("curves")) {
            RocCurve c;
            c.classifier_id = jc.at("classifier").get<std::string>();
            for (const auto& jp : jc.at("points")) {
                CurvePoint cp{read_threshold(jp.at("threshold")),
                              {jp.at("fp").get<double>(), jp.at("tp").get<double>()}};
                validate(cp.point);
                if (!c.points.empty()) {
                    const auto& prev = c.points.back().point;
                    if (cp.point.fp < prev.fp || cp.point.tp < prev.tp)
                        throw DataError("curve '" + c.classifier_id + "' is not monotone");
                }
                c.points.push_back(cp);
            }
            if (c.points.empty()) throw DataError("curve '" + c.classifier_id + "' has no points");
            curves.push_back(std::move(c));
        }
        return curves;
    });
}

std::string write_hull_json(const RocchHull& hull) {
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["kind"] = "rocch";
    doc["vertices"] = Json::array();
    for (const auto& v : hull.vertices()) doc["vertices"].push_back(operating_point_json(v));
    doc["on_hull"] = Json::array();
    for (const auto& p : hull.on_hull()) doc["on_hull"].push_back(operating_point_json(p));
    doc["slopes"] = Json::array();
    for (double s : hull.slopes()) doc["slopes"].push_back(number_or_inf(s));
    return doc.dump(2) + "\n";
}

RocchHull read_hull_json(std::string_view text) {
    const auto doc = parse_json(text);
    return with_json_errors([&] {
        check_header(doc, "rocch");
        std::vector<HullVertex> vertices;
        for (const auto& jv : doc.at("vertices")) vertices.push_back(read_operating_point(jv));
        std::vector<OperatingPoint> on_hull;
        for (const auto& jp : doc.at("on_hull")) on_hull.push_back(read_operating_point(jp));
        auto hull = RocchHull::from_parts(std::move(vertices), std::move(on_hull));

        const auto& stored = doc.at("slopes");
        const auto& computed = hull.slopes();
        if (stored.size() != computed.size()) throw DataError("slope count does not match vertices");
        for (std::size_t i = 0; i < computed.size(); ++i) {
            const double s = read_number_or_inf(stored[i]);
            const double c = computed[i];
            const bool match = (std::isinf(s) && std::isinf(c)) ||
                               std::abs(s - c) <= 1e-9 * std::max(1.0, std::abs(c));
            if (!match) throw DataError("stored slope " + std::to_string(i) + " disagrees with vertices");
        }
        return hull;
    });
}

std::string json_kind(std::string_view text) {
    const auto doc = parse_json(text);
    if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string())
        throw DataError("JSON document has no 'kind'");
    return doc["kind"].get<std::string>();
}

std::string dominator_table_text(const DominatorTable& table) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof line, "%-28s %-24s %s\n", "slope range", "dominator", "(fp, tp)");
    out << line;
    for (const auto& row : table.rows) {
        const auto point = "(" + format_number(row.vertex.point.fp) + ", " +
                           format_number(row.vertex.point.tp) + ")";
        std::snprintf(line, sizeof line, "%-28s %-24s %s\n", range_text(row.range).c_str(),
                      row.vertex.source.describe().c_str(), point.c_str());
        out << line;
    }
    return out.str();
}

std::string dominator_table_csv(const DominatorTable& table) {
    std::string out = "slope_lo,slope_hi,dominator,fp,tp\n";
    for (const auto& row : table.rows) {
        out += format_number(row.range.lo) + "," + format_number(row.range.hi) + "," +
               row.vertex.source.describe() + "," + format_number(row.vertex.point.fp) + "," +
               format_number(row.vertex.point.tp) + "\n";
    }
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    out << contents;
}

}  // namespace rocch::io

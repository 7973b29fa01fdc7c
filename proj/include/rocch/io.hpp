#ifndef ROCCH_IO_HPP
#define ROCCH_IO_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rocch/decision.hpp"
#include "rocch/hull.hpp"
#include "rocch/roc_core.hpp"

namespace rocch::io {

/// A DataError tied to a line of an input file (1-based; header is line 1).
class ParseError : public DataError {
public:
    ParseError(std::size_t line, const std::string& message);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct ScoreRow {
    std::string classifier_id;
    std::string example_id;
    ClassLabel label = ClassLabel::negative;
    std::string score_text;  // kept verbatim so re-serialization cannot move ties
    double score = 0.0;
    std::optional<double> weight;
    std::string weight_text;
};

struct ScoreFile {
    bool has_weight = false;
    std::vector<ScoreRow> rows;
};

/// Header `classifier,example,label,score[,weight]`, one record per line.
ScoreFile parse_score_file(std::string_view text);
std::string serialize(const ScoreFile& file);

using ScoresByClassifier = std::map<std::string, std::vector<ScoredExample>, std::less<>>;

ScoresByClassifier group_by_classifier(const ScoreFile& file);
ScoresByClassifier parse_scores(std::string_view text);

/// 12 significant digits; infinities as "inf" / "-inf".
std::string format_number(double v);

std::string write_curves_json(std::span<const RocCurve> curves);
std::vector<RocCurve> read_curves_json(std::string_view text);

std::string write_hull_json(const RocchHull& hull);
RocchHull read_hull_json(std::string_view text);

/// "curves" or "rocch", read from the top-level "kind" field.
std::string json_kind(std::string_view text);

std::string dominator_table_text(const DominatorTable& table);
std::string dominator_table_csv(const DominatorTable& table);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace rocch::io

#endif  // ROCCH_IO_HPP

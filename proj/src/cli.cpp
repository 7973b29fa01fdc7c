#include "rocch/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rocch/decision.hpp"
#include "rocch/hull.hpp"
#include "rocch/hybrid.hpp"
#include "rocch/io.hpp"
#include "rocch/roc_core.hpp"

namespace rocch::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A labeled point stands for a binary classifier whose score feed is 1 for
// a positive prediction and 0 otherwise.
constexpr double kBinaryThreshold = 0.5;

std::string error_line(std::string_view kind, std::string_view message) {
    nlohmann::json j;
    j["error"] = kind;
    j["message"] = message;
    return j.dump();
}

/// Accepts plain decimals and fractions such as "1/6".
double parse_real(const std::string& text, std::string_view what) {
    auto to_double = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size() || !std::isfinite(v))
            throw UsageError("invalid " + std::string(what) + " '" + text + "'");
        return v;
    };
    const auto slash = text.find('/');
    if (slash == std::string::npos) return to_double(text);
    const double den = to_double(text.substr(slash + 1));
    if (den == 0.0) throw UsageError("invalid " + std::string(what) + " '" + text + "'");
    return to_double(text.substr(0, slash)) / den;
}

bool ends_with(const std::string& s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<RocCurve> curves_from_scores(const std::string& text) {
    std::vector<RocCurve> curves;
    for (const auto& [id, examples] : io::parse_scores(text)) {
        try {
            curves.push_back(generate_roc_curve(examples, id));
        } catch (const io::ParseError&) {
            throw;
        } catch (const DataError& e) {
            throw DataError("classifier '" + id + "': " + e.what());
        }
    }
    return curves;
}

struct LoadedInput {
    std::vector<RocCurve> curves;
    std::optional<RocchHull> hull;
};

// Score CSV, curves JSON or hull JSON, decided by extension and "kind".
LoadedInput load_input(const std::string& path) {
    const auto text = io::read_file(path);
    LoadedInput in;
    if (ends_with(path, ".csv")) {
        in.curves = curves_from_scores(text);
        return in;
    }
    const auto kind = io::json_kind(text);
    if (kind == "curves") {
        in.curves = io::read_curves_json(text);
    } else if (kind == "rocch") {
        in.hull = io::read_hull_json(text);
    } else {
        throw DataError("unsupported document kind '" + kind + "'");
    }
    return in;
}

std::vector<HullInput> hull_inputs(const LoadedInput& in) {
    std::vector<HullInput> out;
    for (const auto& c : in.curves) out.emplace_back(c);
    if (in.hull) {
        for (const auto& v : in.hull->vertices()) {
            if (!v.source.is_degenerate()) out.emplace_back(v);
        }
        for (const auto& p : in.hull->on_hull()) out.emplace_back(p);
    }
    return out;
}

OperatingPoint parse_point_spec(const std::string& spec, std::size_t index) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string part; std::getline(ss, part, ',');) parts.push_back(part);
    if (parts.size() < 2 || parts.size() > 3)
        throw UsageError("--point expects FP,TP[,ID], got '" + spec + "'");
    OperatingPoint p;
    p.point = {parse_real(parts[0], "fp"), parse_real(parts[1], "tp")};
    validate(p.point);
    const auto id = parts.size() == 3 ? parts[2] : "point" + std::to_string(index);
    p.source = Provenance::classifier(id, kBinaryThreshold);
    return p;
}

std::string point_text(const RocPoint& p) {
    return io::format_number(p.fp) + " " + io::format_number(p.tp);
}

std::string policy_text(const HybridPolicy& policy) {
    if (const auto* v = std::get_if<VertexResolution>(&policy.resolution)) {
        return "vertex " + v->vertex.source.describe();
    }
    const auto& m = std::get<MixtureResolution>(policy.resolution);
    return "mixture left=" + m.left.source.describe() + " right=" + m.right.source.describe() +
           " weight=" + io::format_number(m.weight);
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("ROCCH_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw UsageError(std::string("invalid ROCCH_SEED '") + env + "'");
        }
    }
    return 0;
}

// ---- subcommands ----------------------------------------------------------

int cmd_curve(const std::string& input, const std::string& out_path, std::ostream& out) {
    const auto curves = curves_from_scores(io::read_file(input));
    io::write_file(out_path, io::write_curves_json(curves));
    for (const auto& c : curves) {
        out << c.classifier_id << ": " << c.points.size() << " points, auc "
            << io::format_number(auc(c)) << "\n";
    }
    return kExitOk;
}

int cmd_hull(const std::optional<std::string>& input, const std::optional<std::string>& add_to,
             const std::vector<std::string>& point_specs, const std::string& out_path,
             std::ostream& out) {
    std::vector<HullInput> inputs;
    if (input) inputs = hull_inputs(load_input(*input));
    for (std::size_t i = 0; i < point_specs.size(); ++i)
        inputs.emplace_back(parse_point_spec(point_specs[i], i + 1));
    if (inputs.empty() && !add_to) throw UsageError("hull needs an input file or --point");

    RocchHull hull;
    if (add_to) {
        hull = io::read_hull_json(io::read_file(*add_to));
        bool extended = false;
        for (const auto& in : inputs) {
            auto r = insert(hull, in);
            extended = extended || r.extended;
            hull = std::move(r.hull);
        }
        out << "extended: " << (extended ? "true" : "false") << "\n";
    } else {
        hull = build_hull(inputs);
    }
    io::write_file(out_path, io::write_hull_json(hull));
    out << "vertices: " << hull.vertices().size() << "\n";
    for (const auto& v : hull.vertices()) {
        out << "  " << point_text(v.point) << " " << v.source.describe() << "\n";
    }
    return kExitOk;
}

struct SelectArgs {
    std::optional<std::string> prior;
    std::optional<std::string> cost_fp;
    std::optional<std::string> cost_fn;
    std::optional<std::string> fp_max;
    std::vector<std::string> caseload;
};

int cmd_select(const std::string& hull_path, const SelectArgs& a, std::ostream& out) {
    const bool by_cost = a.prior || a.cost_fp || a.cost_fn;
    const int modes = int(by_cost) + int(a.fp_max.has_value()) + int(!a.caseload.empty());
    if (modes != 1) throw UsageError("select needs exactly one of --prior/--cost-fp/--cost-fn, --fp-max, --caseload");

    const auto hull = io::read_hull_json(io::read_file(hull_path));
    if (by_cost) {
        if (!a.prior || !a.cost_fp || !a.cost_fn)
            throw UsageError("--prior, --cost-fp and --cost-fn must be given together");
        const OperatingConditions cond{parse_real(*a.prior, "prior"), parse_real(*a.cost_fp, "cost"),
                                       parse_real(*a.cost_fn, "cost")};
        cond.validate();
        const auto& v = select_min_cost(hull, cond);
        const auto policy = policy_for(hull, v.point.fp);
        out << "criterion: min-cost\n"
            << "slope: " << io::format_number(iso_slope(cond)) << "\n"
            << "x: " << io::format_number(policy.x) << "\n"
            << "point: " << point_text(v.point) << "\n"
            << "policy: " << policy_text(policy) << "\n"
            << "expected_cost: " << io::format_number(expected_cost(v.point, cond)) << "\n";
        return kExitOk;
    }
    if (a.fp_max) {
        const auto sel = select_neyman_pearson(hull, parse_real(*a.fp_max, "fp-max"));
        const auto policy = policy_for(hull, sel.point.fp);
        out << "criterion: neyman-pearson\n"
            << "x: " << io::format_number(policy.x) << "\n"
            << "point: " << point_text(sel.point) << "\n"
            << "policy: " << policy_text(policy) << "\n";
        return kExitOk;
    }
    if (a.caseload.size() != 3) throw UsageError("--caseload expects P N K");
    const Caseload load{parse_real(a.caseload[0], "P"), parse_real(a.caseload[1], "N"),
                        parse_real(a.caseload[2], "K")};
    const double x = x_from_conditions(hull, load);
    const auto sel = select_constrained(hull, load.constraint());
    const auto policy = policy_for(hull, x);
    out << "criterion: caseload\n"
        << "x: " << io::format_number(x) << "\n"
        << "point: " << point_text(sel.point) << "\n"
        << "policy: " << policy_text(policy) << "\n"
        << "expected_cases: " << io::format_number(load.constraint().lhs(sel.point)) << "\n";
    return kExitOk;
}

int cmd_sensitivity(const std::string& hull_path, const std::vector<std::string>& prior,
                    const std::vector<std::string>& cost_fp, const std::vector<std::string>& cost_fn,
                    std::ostream& out) {
    auto range = [](const std::vector<std::string>& v, std::string_view what) {
        if (v.empty() || v.size() > 2) throw UsageError("expected one or two values for " + std::string(what));
        const double lo = parse_real(v.front(), what);
        const double hi = parse_real(v.back(), what);
        return std::pair{lo, hi};
    };
    const auto [p_lo, p_hi] = range(prior, "--prior");
    const auto [fp_lo, fp_hi] = range(cost_fp, "--cost-fp");
    const auto [fn_lo, fn_hi] = range(cost_fn, "--cost-fn");
    const auto hull = io::read_hull_json(io::read_file(hull_path));
    const auto report = sensitivity(hull, {p_lo, p_hi, fp_lo, fp_hi, fn_lo, fn_hi});
    out << "slope_range: [" << io::format_number(report.slopes.lo) << ", "
        << io::format_number(report.slopes.hi) << "]\n"
        << "insensitive: " << (report.insensitive() ? "true" : "false") << "\n";
    for (const auto& v : report.vertices) {
        out << "vertex: " << point_text(v.point) << " " << v.source.describe() << "\n";
    }
    return kExitOk;
}

int cmd_dominators(const std::string& hull_path, bool csv, std::ostream& out) {
    const auto table = dominator_table(io::read_hull_json(io::read_file(hull_path)));
    out << (csv ? io::dominator_table_csv(table) : io::dominator_table_text(table));
    return kExitOk;
}

int cmd_auc(const std::string& input, std::ostream& out) {
    const auto in = load_input(input);
    for (const auto& c : in.curves) out << c.classifier_id << ": " << io::format_number(auc(c)) << "\n";
    const auto hull = in.hull ? *in.hull : build_hull(hull_inputs(in));
    out << "rocch: " << io::format_number(auc(hull)) << "\n";
    return kExitOk;
}

int cmd_hybrid(const std::string& hull_path, const std::string& scores_path, const std::string& x_text,
               std::uint64_t seed, const std::string& out_path, std::ostream& out) {
    const auto hull = io::read_hull_json(io::read_file(hull_path));
    const auto file = io::parse_score_file(io::read_file(scores_path));
    const auto policy = policy_for(hull, parse_real(x_text, "x"));

    // Instances in first-appearance order, one score per classifier.
    std::vector<std::string> order;
    std::map<std::string, std::pair<ClassLabel, ScoreLookup>, std::less<>> instances;
    for (const auto& row : file.rows) {
        auto [it, fresh] = instances.try_emplace(row.example_id, row.label, ScoreLookup{});
        if (fresh) {
            order.push_back(row.example_id);
        } else if (it->second.first != row.label) {
            throw DataError("example '" + row.example_id + "' has conflicting labels");
        }
        it->second.second[row.classifier_id] = row.score;
    }

    Rng rng(seed);
    std::string csv = "example,prediction,component,coin\n";
    double tp = 0, fp = 0, pos = 0, neg = 0;
    for (const auto& id : order) {
        const auto& [label, scores] = instances.at(id);
        ClassifyResult r;
        try {
            r = classify(policy, scores, rng);
        } catch (const DataError& e) {
            throw DataError("example '" + id + "': " + e.what());
        }
        const bool yes = r.prediction == Prediction::yes;
        (label == ClassLabel::positive ? pos : neg) += 1;
        if (yes) (label == ClassLabel::positive ? tp : fp) += 1;
        csv += id + "," + to_char(r.prediction) + "," + r.component + "," +
               (r.chose_right ? (*r.chose_right ? "right" : "left") : "-") + "\n";
    }
    io::write_file(out_path, csv);

    out << "x: " << io::format_number(policy.x) << "\n"
        << "policy: " << policy_text(policy) << "\n"
        << "expected: " << point_text(policy.expected_rates()) << "\n"
        << "instances: " << order.size() << "\n";
    if (pos > 0 && neg > 0) out << "empirical: " << point_text({fp / neg, tp / pos}) << "\n";
    return kExitOk;
}

int cmd_plot(const std::string& input, const std::vector<std::string>& iso_specs,
             const std::string& out_path) {
    const auto in = load_input(input);
    const auto hull = in.hull ? *in.hull : build_hull(hull_inputs(in));

    std::string tsv = "series\tfp\ttp\n";
    auto row = [&](const std::string& series, const RocPoint& p) {
        tsv += series + "\t" + io::format_number(p.fp) + "\t" + io::format_number(p.tp) + "\n";
    };
    for (const auto& c : in.curves) {
        for (const auto& cp : c.points) row(c.classifier_id, cp.point);
    }
    for (const auto& v : hull.vertices()) row("rocch", v.point);

    for (const auto& spec : iso_specs) {
        std::vector<std::string> parts;
        std::stringstream ss(spec);
        for (std::string part; std::getline(ss, part, ',');) parts.push_back(part);
        if (parts.size() != 3) throw UsageError("--iso expects PRIOR,COST_FP,COST_FN, got '" + spec + "'");
        const OperatingConditions cond{parse_real(parts[0], "prior"), parse_real(parts[1], "cost"),
                                       parse_real(parts[2], "cost")};
        const double m = iso_slope(cond);
        const auto& v = select_min_cost(hull, cond).point;
        // The iso-performance line through the optimal vertex, clipped to the unit square.
        const double lo = std::max(0.0, v.fp - v.tp / m);
        const double hi = std::min(1.0, v.fp + (1.0 - v.tp) / m);
        const auto series = "iso:m=" + io::format_number(m);
        row(series, {lo, v.tp + m * (lo - v.fp)});
        row(series, {hi, v.tp + m * (hi - v.fp)});
    }
    io::write_file(out_path, tsv);
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"ROC convex hull analysis and hybrid classification", "rocch"};
    app.require_subcommand(1);

    std::string input, out_path, hull_path, scores_path, x_text;
    std::optional<std::string> opt_input, add_to;
    std::vector<std::string> points, iso_specs, prior_range, fp_range, fn_range;
    SelectArgs sel;
    bool csv = false;
    std::optional<std::uint64_t> seed;

    auto* curve = app.add_subcommand("curve", "ROC curve per classifier from a score file");
    curve->add_option("scores", input, "score CSV")->required();
    curve->add_option("--out", out_path, "curves JSON")->required();

    auto* hull = app.add_subcommand("hull", "build or extend the ROC convex hull");
    hull->add_option("input", opt_input, "score CSV, curves JSON or hull JSON");
    hull->add_option("--add", add_to, "existing hull JSON to insert into");
    hull->add_option("--point", points, "labeled point FP,TP[,ID] (repeatable)");
    hull->add_option("--out", out_path, "hull JSON")->required();

    auto* select = app.add_subcommand("select", "choose the operating point for given conditions");
    select->add_option("hull", hull_path)->required();
    select->add_option("--prior", sel.prior, "positive-class prior p(p), e.g. 1/6");
    select->add_option("--cost-fp", sel.cost_fp, "cost of a false positive");
    select->add_option("--cost-fn", sel.cost_fn, "cost of a false negative");
    select->add_option("--fp-max", sel.fp_max, "Neyman-Pearson false positive limit");
    select->add_option("--caseload", sel.caseload, "P N K: maximize TP with TP*P + FP*N <= K")->expected(3);

    auto* sens = app.add_subcommand("sensitivity", "slope range and candidate vertices over a condition box");
    sens->add_option("hull", hull_path)->required();
    sens->add_option("--prior", prior_range, "prior or LO HI")->expected(1, 2)->required();
    sens->add_option("--cost-fp", fp_range, "LO HI")->expected(1, 2)->required();
    sens->add_option("--cost-fn", fn_range, "LO HI")->expected(1, 2)->required();

    auto* dom = app.add_subcommand("dominators", "locally dominating classifier per slope range");
    dom->add_option("hull", hull_path)->required();
    dom->add_flag("--csv", csv, "emit CSV instead of a text table");

    auto* auc_cmd = app.add_subcommand("auc", "area under each curve and under the hull");
    auc_cmd->add_option("input", input, "curves JSON, hull JSON or score CSV")->required();

    auto* hybrid = app.add_subcommand("hybrid", "run the hybrid classifier at a target FP rate");
    hybrid->add_option("hull", hull_path)->required();
    hybrid->add_option("scores", scores_path)->required();
    hybrid->add_option("--x", x_text, "target false positive rate")->required();
    hybrid->add_option("--seed", seed, "coin-flip seed (default: $ROCCH_SEED or 0)");
    hybrid->add_option("--out", out_path, "predictions CSV")->required();

    auto* plot = app.add_subcommand("plot", "TSV plot data with optional iso-performance lines");
    plot->add_option("input", input, "curves JSON, hull JSON or score CSV")->required();
    plot->add_option("--iso", iso_specs, "PRIOR,COST_FP,COST_FN (repeatable)");
    plot->add_option("--out", out_path, "TSV output")->required();

    std::vector<const char*> argv{"rocch"};
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << error_line("usage", e.what()) << "\n";
        return kExitUsage;
    }

    try {
        if (*curve) return cmd_curve(input, out_path, out);
        if (*hull) return cmd_hull(opt_input, add_to, points, out_path, out);
        if (*select) return cmd_select(hull_path, sel, out);
        if (*sens) return cmd_sensitivity(hull_path, prior_range, fp_range, fn_range, out);
        if (*dom) return cmd_dominators(hull_path, csv, out);
        if (*auc_cmd) return cmd_auc(input, out);
        if (*hybrid) return cmd_hybrid(hull_path, scores_path, x_text, seed ? *seed : default_seed(),
                                       out_path, out);
        if (*plot) return cmd_plot(input, iso_specs, out_path);
    } catch (const UsageError& e) {
        err << error_line("usage", e.what()) << "\n";
        return kExitUsage;
    } catch (const DataError& e) {
        err << error_line("data", e.what()) << "\n";
        return kExitData;
    }
    return kExitUsage;
}

}  // namespace rocch::cli

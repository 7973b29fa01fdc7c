#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rocch/cli.hpp"
#include "rocch/decision.hpp"
#include "rocch/io.hpp"

using namespace rocch;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome rocch_run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const char* env = std::getenv("ROCCH_TEST_TMP");
    const fs::path dir = env ? fs::path(env) : fs::temp_directory_path() / "rocch_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

std::string path(const std::string& name) { return scratch(name).string(); }

constexpr const char* kScores =
    "classifier,example,label,score\n"
    "A,e1,p,0.9\nA,e2,p,0.8\nA,e3,n,0.95\nA,e4,p,0.6\nA,e5,n,0.5\nA,e6,n,0.4\nA,e7,p,0.3\nA,e8,n,0.2\n"
    "B,e1,p,0.6\nB,e2,p,0.7\nB,e3,n,0.95\nB,e4,p,0.9\nB,e5,n,0.2\nB,e6,n,0.8\nB,e7,p,0.5\nB,e8,n,0.3\n";

std::string running_hull() {
    const auto out = path("running.json");
    const auto r = rocch_run({"hull", "--point", "0.1,0.5,A", "--point", "0.2,0.5,B", "--point", "0.5,0.9,C",
                              "--out", out});
    REQUIRE(r.code == cli::kExitOk);
    return out;
}

std::string line_starting(const std::string& text, const std::string& prefix) {
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (line.rfind(prefix, 0) == 0) return line;
    }
    return {};
}

}  // namespace

TEST_CASE("select under equal costs and prior 1/6") {
    const auto hull = running_hull();
    const auto r = rocch_run({"select", hull, "--prior", "1/6", "--cost-fp", "1", "--cost-fn", "1"});
    REQUIRE(r.code == cli::kExitOk);
    CHECK(line_starting(r.out, "slope:") == "slope: 5");
    CHECK(line_starting(r.out, "criterion:") == "criterion: min-cost");

    const auto r2 = rocch_run({"select", hull, "--prior", "1/6", "--cost-fp", "1", "--cost-fn", "25"});
    CHECK(line_starting(r2.out, "slope:") == "slope: 0.2");
    CHECK(line_starting(r2.out, "point:") == "point: 0.5 0.9");
    CHECK(line_starting(r2.out, "policy:") == "policy: vertex C@0.5");
}

TEST_CASE("select matches the library on the stored hull") {
    const auto hull_path = running_hull();
    const auto hull = io::read_hull_json(io::read_file(hull_path));
    for (const auto& [prior, cfp, cfn] : std::vector<std::tuple<std::string, double, double>>{
             {"0.5", 1, 1}, {"0.1", 1, 10}, {"0.9", 3, 1}, {"1/6", 1, 2.5}}) {
        const auto r = rocch_run({"select", hull_path, "--prior", prior, "--cost-fp", io::format_number(cfp),
                                  "--cost-fn", io::format_number(cfn)});
        REQUIRE(r.code == cli::kExitOk);
        const double p = prior == "1/6" ? 1.0 / 6 : std::stod(prior);
        const auto& v = select_min_cost(hull, {p, cfp, cfn});
        CHECK(line_starting(r.out, "point:") ==
              "point: " + io::format_number(v.point.fp) + " " + io::format_number(v.point.tp));
    }
}

TEST_CASE("select by fp limit and caseload") {
    const auto hull = running_hull();
    const auto np = rocch_run({"select", hull, "--fp-max", "0.3"});
    REQUIRE(np.code == cli::kExitOk);
    CHECK(line_starting(np.out, "point:") == "point: 0.3 0.7");
    CHECK(line_starting(np.out, "policy:").find("mixture left=A@0.5 right=C@0.5 weight=0.5") != std::string::npos);

    const auto cl = rocch_run({"select", hull, "--caseload", "20", "100", "30"});
    REQUIRE(cl.code == cli::kExitOk);
    CHECK(line_starting(cl.out, "x:") == "x: " + io::format_number(11.0 / 60));
    CHECK(line_starting(cl.out, "expected_cases:") == "expected_cases: 30");
}

TEST_CASE("hull --add reports whether the hull grew") {
    const auto base = running_hull();
    const auto inside = rocch_run({"hull", "--add", base, "--point", "0.3,0.6,E", "--out", path("inside.json")});
    REQUIRE(inside.code == cli::kExitOk);
    CHECK(line_starting(inside.out, "extended:") == "extended: false");
    CHECK(line_starting(inside.out, "vertices:") == "vertices: 4");

    const auto grow = rocch_run({"hull", "--add", base, "--point", "0.3,0.8,D", "--out", path("grow.json")});
    CHECK(line_starting(grow.out, "extended:") == "extended: true");
    CHECK(line_starting(grow.out, "vertices:") == "vertices: 5");
}

TEST_CASE("curve, hull and hybrid on a score file") {
    const auto scores = path("scores.csv");
    io::write_file(scores, kScores);

    const auto c = rocch_run({"curve", scores, "--out", path("curves.json")});
    REQUIRE(c.code == cli::kExitOk);
    CHECK(io::json_kind(io::read_file(path("curves.json"))) == "curves");
    CHECK(c.out.find("A: ") != std::string::npos);

    const auto h = rocch_run({"hull", path("curves.json"), "--out", path("scores_hull.json")});
    REQUIRE(h.code == cli::kExitOk);
    const auto hull = path("scores_hull.json");

    SUBCASE("x = 0 predicts no everywhere") {
        const auto r = rocch_run({"hybrid", hull, scores, "--x", "0", "--seed", "1", "--out", path("preds0.csv")});
        REQUIRE(r.code == cli::kExitOk);
        const auto csv = io::read_file(path("preds0.csv"));
        std::istringstream in(csv);
        std::string line;
        std::getline(in, line);
        CHECK(line == "example,prediction,component,coin");
        int n = 0;
        while (std::getline(in, line)) {
            ++n;
            CHECK(line.find(",N,") != std::string::npos);
        }
        CHECK(n == 8);
        CHECK(line_starting(r.out, "instances:") == "instances: 8");
    }
    SUBCASE("x = 1 predicts yes everywhere") {
        const auto r = rocch_run({"hybrid", hull, scores, "--x", "1", "--seed", "1", "--out", path("preds1.csv")});
        REQUIRE(r.code == cli::kExitOk);
        CHECK(line_starting(r.out, "empirical:") == "empirical: 1 1");
    }
    SUBCASE("seeded runs are byte-identical") {
        const auto a = rocch_run({"hybrid", hull, scores, "--x", "0.35", "--seed", "9", "--out", path("pa.csv")});
        const auto b = rocch_run({"hybrid", hull, scores, "--x", "0.35", "--seed", "9", "--out", path("pb.csv")});
        REQUIRE(a.code == cli::kExitOk);
        CHECK(a.out == b.out);
        CHECK(io::read_file(path("pa.csv")) == io::read_file(path("pb.csv")));
    }
    SUBCASE("auc lists curves then the hull") {
        const auto r = rocch_run({"auc", path("curves.json")});
        REQUIRE(r.code == cli::kExitOk);
        const auto curves = io::read_curves_json(io::read_file(path("curves.json")));
        CHECK(line_starting(r.out, "A:") == "A: " + io::format_number(auc(curves[0])));
        CHECK(line_starting(r.out, "rocch:") ==
              "rocch: " + io::format_number(auc(io::read_hull_json(io::read_file(hull)))));
    }
}

TEST_CASE("hull output is deterministic") {
    const auto scores = path("det.csv");
    io::write_file(scores, kScores);
    REQUIRE(rocch_run({"hull", scores, "--out", path("det1.json")}).code == cli::kExitOk);
    REQUIRE(rocch_run({"hull", scores, "--out", path("det2.json")}).code == cli::kExitOk);
    CHECK(io::read_file(path("det1.json")) == io::read_file(path("det2.json")));
}

TEST_CASE("sensitivity, dominators and plot") {
    const auto hull = running_hull();
    const auto s = rocch_run({"sensitivity", hull, "--prior", "1/6", "--cost-fp", "1", "--cost-fn", "10", "25"});
    REQUIRE(s.code == cli::kExitOk);
    CHECK(line_starting(s.out, "slope_range:") == "slope_range: [0.2, 0.5]");
    CHECK(line_starting(s.out, "insensitive:") == "insensitive: true");
    CHECK(line_starting(s.out, "vertex:") == "vertex: 0.5 0.9 C@0.5");

    const auto d = rocch_run({"dominators", hull, "--csv"});
    REQUIRE(d.code == cli::kExitOk);
    CHECK(d.out == io::dominator_table_csv(dominator_table(io::read_hull_json(io::read_file(hull)))));

    const auto p = rocch_run({"plot", hull, "--iso", "1/6,1,1", "--out", path("plot.tsv")});
    REQUIRE(p.code == cli::kExitOk);
    const auto tsv = io::read_file(path("plot.tsv"));
    CHECK(tsv.rfind("series\tfp\ttp\n", 0) == 0);
    CHECK(tsv.find("rocch\t0.1\t0.5\n") != std::string::npos);
    CHECK(tsv.find("iso:m=5\t") != std::string::npos);
}

TEST_CASE("errors") {
    const auto hull = running_hull();
    auto check_error = [](const Outcome& r, int code, const std::string& kind) {
        CHECK(r.code == code);
        CHECK(r.out.empty());
        REQUIRE(!r.err.empty());
        CHECK(r.err.back() == '\n');
        CHECK(r.err.find('\n') == r.err.size() - 1);
        const auto j = nlohmann::json::parse(r.err);
        CHECK(j.at("error") == kind);
        CHECK(j.at("message").is_string());
    };
    check_error(rocch_run({}), cli::kExitUsage, "usage");
    check_error(rocch_run({"bogus"}), cli::kExitUsage, "usage");
    check_error(rocch_run({"select", hull}), cli::kExitUsage, "usage");
    check_error(rocch_run({"select", hull, "--prior", "0.5", "--fp-max", "0.1"}), cli::kExitUsage, "usage");
    check_error(rocch_run({"select", hull, "--prior", "1.5", "--cost-fp", "1", "--cost-fn", "1"}),
                cli::kExitData, "data");
    check_error(rocch_run({"select", path("missing.json"), "--fp-max", "0.1"}), cli::kExitData, "data");
    check_error(rocch_run({"select", hull, "--caseload", "20", "100", "-5"}), cli::kExitData, "data");

    io::write_file(path("bad.csv"), "classifier,example,label,score\nA,e1,q,0.5\n");
    const auto bad = rocch_run({"curve", path("bad.csv"), "--out", path("bad.json")});
    check_error(bad, cli::kExitData, "data");
    CHECK(bad.err.find("line 2") != std::string::npos);

    io::write_file(path("missing_b.csv"), "classifier,example,label,score\nZ,e1,p,0.5\n");
    check_error(rocch_run({"hybrid", hull, path("missing_b.csv"), "--x", "0.3", "--out", path("x.csv")}),
                cli::kExitData, "data");
}

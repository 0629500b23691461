#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "chartdist/bisim.hpp"
#include "chartdist/cli.hpp"
#include "chartdist/expr.hpp"

using namespace chartdist;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

const std::string kTwoLoopsLeft = "a.(a.0 + b.mu v1.a.v1)+b.mu v1.a.v1";
const std::string kTwoLoopsRight = "mu v2.(a.v2 + b.mu v1.a.a.v1)";

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("chartdist_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct CorpusEntry {
    std::string name, expr, diag;
};

std::vector<CorpusEntry> corpus() {
    std::ifstream in(std::string(CHARTDIST_DATA_DIR) + "/corpus.txt");
    std::vector<CorpusEntry> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream s(line);
        CorpusEntry e;
        std::getline(s, e.name, '\t');
        std::getline(s, e.expr, '\t');
        std::getline(s, e.diag, '\t');
        out.push_back(e);
    }
    return out;
}

}  // namespace

TEST_CASE("dist") {
    Result r = run({"dist", kTwoLoopsLeft, kTwoLoopsRight});
    CHECK(r.code == 0);
    CHECK(r.out == "1/4 (level 2)\n");
    CHECK(run({"dist", "0", "0"}).out == "0 (bisimilar)\n");
    CHECK(run({"dist", "0", "a.0"}).out == "1 (level 0)\n");
    CHECK(run({"dist", "--format", "diag", "act(a)", "act(a);act(a)"}).out == "1/2 (level 1)\n");
    // expression against diagram
    CHECK(run({"dist", "a.v1 + b.v2", "copy;(act(b)*act(a));sym(>,>)"}).out == "0 (bisimilar)\n");
}

TEST_CASE("dist --table") {
    Result r = run({"dist", "--table", "a.a.0", "a.0"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "1/2 (level 1)");
    std::getline(in, line);
    CHECK(line == "state\tL1:a.a.0\tL1:a.0\tL1:0\tR1:a.0\tR1:0");
    std::getline(in, line);
    CHECK(line == "L1:a.a.0\t0\t1/2\t1\t1/2\t1");
}

TEST_CASE("bisim and strat") {
    Result r = run({"bisim", "mu v1.a.v1", "mu v1.a.a.v1"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("bisimilar\n", 0) == 0);
    CHECK(r.out.find("mu v1.a.v1\ta.mu v1.a.a.v1") != std::string::npos);
    r = run({"bisim", kTwoLoopsLeft, kTwoLoopsRight});
    CHECK(r.code == 1);
    CHECK(r.out == "not bisimilar (distinguished at level 3)\n");
    CHECK(run({"strat", kTwoLoopsLeft, kTwoLoopsRight}).out == "2\n");
    CHECK(run({"strat", "v1", "v1 + v1"}).out == "inf\n");
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"frobnicate"}).code == cli::kUsage);
    CHECK(run({"dist", "0"}).code == cli::kUsage);
    CHECK(run({"dist", "--format", "yaml", "0", "0"}).code == cli::kUsage);
    CHECK(run({"dist", "@/nonexistent/file", "0"}).code == cli::kUsage);
    Result r = run({"dist", "a.(", "0"});
    CHECK(r.code == cli::kParse);
    CHECK(r.err.find("position") != std::string::npos);
    CHECK(run({"dist", "--alphabet", "a", "b.0", "0"}).code == cli::kParse);
    CHECK(run({"dist", "copy", "act(a)"}).code == cli::kType);
    CHECK(run({"dist", "copy;act(a)", "copy"}).code == cli::kType);
    CHECK(run({"derive", "--eps", "1/4", "a.a.0", "a.0"}).code == cli::kRejected);
    CHECK(run({"dist", "--max-states", "2", "mu v1.a.a.a.v1", "0"}).code == cli::kBudget);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("derive and check") {
    auto cert = temp_path("twoloops.cert");
    Result r = run({"derive", "--eps", "1/4", kTwoLoopsLeft, kTwoLoopsRight, "-o", cert.string()});
    REQUIRE(r.code == 0);
    std::string text = slurp(cert);
    CHECK(text.rfind("(certificate", 0) == 0);
    CHECK(text.find("(bound 1/4)") != std::string::npos);

    r = run({"check", cert.string(), kTwoLoopsLeft, kTwoLoopsRight});
    CHECK(r.code == 0);
    CHECK(r.out == "accepted: distance <= 1/4\n");
    // metadata names the other pair
    CHECK(run({"check", cert.string(), kTwoLoopsRight, kTwoLoopsLeft}).code == cli::kRejected);

    r = run({"derive", kTwoLoopsLeft, kTwoLoopsRight});
    CHECK(r.out == text);

    r = run({"check", "(coupling 1/2 ((move (act a \"v1\") (act a \"v2\") (top))))", "a.v1", "a.v2"});
    CHECK(r.code == 0);
    r = run({"check", "(coupling 1/4 ((move (act a \"v1\") (act a \"v2\") (top))))", "a.v1", "a.v2"});
    CHECK(r.code == cli::kRejected);
    CHECK(r.err.find("coupling claims 1/4") != std::string::npos);
    CHECK(run({"check", "(coupling 1/4", "a.v1", "a.v2"}).code == cli::kParse);

    r = run({"derive", "copy;(act(a)*act(b))", "copy;(act(a)*act(a))"});
    CHECK(r.code == 0);
    auto dcert = temp_path("diag.cert");
    std::ofstream(dcert) << r.out;
    CHECK(run({"check", "@" + dcert.string(), "copy;(act(a)*act(b))", "copy;(act(a)*act(a))"}).code == 0);
    CHECK(run({"derive", "--format", "chart", cert.string(), cert.string()}).code != 0);
    std::filesystem::remove(cert);
    std::filesystem::remove(dcert);
}

TEST_CASE("compile output is chart text") {
    Result r = run({"compile", kTwoLoopsRight});
    REQUIRE(r.code == 0);
    NamedChart c = parse_chart_text(r.out);
    CHECK(bisimilar(c.chart, expand(parse_expr(kTwoLoopsRight)).chart).bisimilar);

    auto file = temp_path("twoloops.chart");
    std::ofstream(file) << r.out;
    CHECK(run({"dist", "@" + file.string(), kTwoLoopsLeft}).out == "1/4 (level 2)\n");
    CHECK(run({"dist", "--format", "chart", file.string(), file.string()}).out == "0 (bisimilar)\n");
    std::filesystem::remove(file);

    r = run({"compile", "(copy;(act(a)*act(b)))*id(>)"});
    CHECK(r.out.find("# component 2") != std::string::npos);
}

TEST_CASE("render and --dot") {
    Result r = run({"render", "copy;(act(a)*del)"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("digraph", 0) == 0);
    CHECK(run({"render", "a.v1"}).out.rfind("digraph", 0) == 0);

    auto dot = temp_path("pair.dot");
    r = run({"dist", "--dot", dot.string(), "a.0", "a.a.0"});
    CHECK(r.out == "1/2 (level 1)\n");
    std::string text = slurp(dot);
    CHECK(text.find("digraph") != std::string::npos);
    CHECK(text.find("digraph", 1) != std::string::npos);
    std::filesystem::remove(dot);
}

TEST_CASE("axioms") {
    Result r = run({"axioms"});
    CHECK(r.code == 0);
    CHECK(r.out.find("B10\tcopy;merge = id(>)") != std::string::npos);
    r = run({"axioms", "--check"});
    CHECK(r.code == 0);
    CHECK(r.out.find("C1\tholds\n") != std::string::npos);
    CHECK(r.out.find("C1-copy\tfails (expected to fail)\n") != std::string::npos);
}

TEST_CASE("determinism") {
    std::vector<std::vector<std::string>> cmds = {
        {"dist", "--table", kTwoLoopsLeft, kTwoLoopsRight},
        {"derive", kTwoLoopsLeft, kTwoLoopsRight},
        {"bisim", "mu v1.a.v1", "mu v1.a.a.v1"},
        {"compile", kTwoLoopsLeft},
        {"render", "copy;(act(a)*act(b));merge"},
    };
    for (const auto& c : cmds) {
        Result a = run(c), b = run(c);
        CHECK(a.out == b.out);
        CHECK(a.code == b.code);
    }
}

TEST_CASE("corpus: expressions and diagrams agree") {
    auto entries = corpus();
    REQUIRE(entries.size() >= 10);
    for (const auto& e : entries) {
        INFO(e.name);
        CHECK(run({"dist", "--format", "expr", e.expr, e.diag}).code == cli::kParse);
        CHECK(run({"dist", e.expr, e.diag}).out == "0 (bisimilar)\n");
    }
    for (const auto& x : entries)
        for (const auto& y : entries) {
            Result ed = run({"dist", "--format", "diag", x.diag, y.diag});
            if (ed.code == cli::kType) continue;
            INFO(x.name << " vs " << y.name);
            CHECK(run({"dist", x.expr, y.expr}).out == ed.out);
        }
}

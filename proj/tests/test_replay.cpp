#include <algorithm>

#include <gtest/gtest.h>

#include "crossratio/parser.hpp"
#include "crossratio/replay.hpp"
#include "gen.hpp"
#include "json.hpp"

using namespace crossratio;

namespace {

RunConfig quiet(std::vector<std::string> fields = {}) {
    RunConfig c;
    if (!fields.empty()) {
        c.fields.clear();
        for (const auto& n : fields) c.fields.push_back(Field::parse(n));
    }
    c.timing = false;
    return c;
}

}  // namespace

TEST(Parser, Examples) {
    const Ring r(Field::rationals(), {"x", "y"});
    EXPECT_EQ(parse_expr("x^2 - 2*x*y + y^2", r), parse_expr("(x-y)^2", r));
    EXPECT_EQ(parse_expr("-x + +y", r), parse_expr("y - x", r));
    EXPECT_EQ(parse_expr("1/2 + 1/3", r), RatFunc(r, FieldElement(Field::rationals(), mpq_class(5, 6))));
    EXPECT_EQ(parse_expr("x/y/x", r), parse_expr("1/y", r));
    EXPECT_EQ(parse_expr("2^10", r), RatFunc(r, 1024));
    EXPECT_EQ(parse_expr("  x\t*  y ", r), parse_expr("x*y", r));
    const Ring qi(Field::gaussian_rationals(), {"x"});
    EXPECT_EQ(parse_expr("i^2", qi), RatFunc(qi, -1));
    const Ring withi(Field::rationals(), {"i"});
    EXPECT_NO_THROW(parse_expr("i^2 + 1", withi));
    EXPECT_EQ(collect_identifiers("x1 + 2*y - i*x1/zz"), (std::set<std::string>{"x1", "y", "zz"}));
}

TEST(Parser, Errors) {
    const Ring r(Field::rationals(), {"x"});
    EXPECT_THROW(parse_expr("1/(x-x)", r), ParseError);
    EXPECT_THROW(parse_expr("q + 1", r), ParseError);
    EXPECT_THROW(parse_expr("i", r), ParseError);
    EXPECT_THROW(parse_expr("x^-1", r), ParseError);
    EXPECT_THROW(parse_expr("x^y", r), ParseError);
    EXPECT_THROW(parse_expr("(x+1", r), ParseError);
    EXPECT_THROW(parse_expr("", r), ParseError);
    EXPECT_THROW(parse_expr("x + * 2", r), ParseError);
    try {
        parse_expr("x + )", r);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 4u);
    }
}

TEST(Replay, NamedExpressionTable) {
    for (const char* name : {"Q", "F3", "Q(i)"}) {
        const auto t = named_expressions(Field::parse(name));
        const RatFunc one(t.ring, 1);
        EXPECT_EQ(t["u"], t["w"] / t["y"]) << name;
        EXPECT_EQ(t["t"], t["z"] / t["y"]) << name;
        EXPECT_EQ(t["b"], one - RatFunc(t.ring, 2) * t["a"]) << name;
        EXPECT_EQ(t["x"], t["b"] * t["b"]) << name;
        EXPECT_TRUE(((one - t["a"]) * t["u"] * t["u"] - t["t"] * t["t"] + t["a"]).is_zero()) << name;
    }
    const auto c2 = named_expressions(Field::parse("F2"));
    EXPECT_EQ(c2["u"], c2["y"] / c2["w"]);
    EXPECT_EQ(c2["x"], c2["a"] * (RatFunc(c2.ring, 1) + c2["a"]));
    const auto& a = c2["a"];
    const auto& u = c2["u"];
    const auto& t = c2["t"];
    EXPECT_TRUE((a * u * u + a * u + t * t + t).is_zero());
}

TEST(Replay, CheckIdsAndAnchors) {
    const auto& ids = checklist_ids();
    EXPECT_EQ(ids.size(), 21u);
    EXPECT_EQ(std::set<std::string>(ids.begin(), ids.end()).size(), ids.size());
    for (const auto& id : ids) EXPECT_FALSE(anchor_for(id).empty()) << id;
    EXPECT_THROW(anchor_for("NOPE"), DomainError);
    EXPECT_THROW(run_checklist({"NOPE"}, quiet()), DomainError);
}

// Dependencies point backwards in checklist order and are closed under selection.
TEST(Replay, DependencyGraph) {
    const auto& ids = checklist_ids();
    for (std::size_t k = 0; k < ids.size(); ++k) {
        for (const auto& d : dependencies_of(ids[k])) {
            const auto at = std::find(ids.begin(), ids.end(), d);
            ASSERT_NE(at, ids.end()) << d;
            EXPECT_LT(static_cast<std::size_t>(at - ids.begin()), k) << ids[k] << " needs " << d;
        }
    }
    EXPECT_TRUE(dependencies_of("SPLIT").empty());
    const auto rep = run_checklist({"MAIN-C-VERDICT"}, quiet({"F2"}));
    std::set<std::string> got;
    for (const auto& c : rep.checks) got.insert(c.id);
    std::set<std::string> want{"MAIN-C-VERDICT"};
    for (const auto& d : dependencies_of("MAIN-C-VERDICT")) want.insert(d);
    EXPECT_EQ(got, want);
    EXPECT_FALSE(rep.has_fail());
}

TEST(Replay, FullRunHasNoFail) {
    const auto rep = run_checklist({}, quiet());
    EXPECT_FALSE(rep.has_fail()) << emit_report(rep, ReportFormat::Text, true);
    ASSERT_EQ(rep.checks.size(), 21u);
    EXPECT_TRUE(std::is_sorted(rep.checks.begin(), rep.checks.end(),
                               [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; }));
    for (const auto& id : checklist_ids()) EXPECT_NE(rep.find(id), nullptr) << id;
    EXPECT_EQ(rep.find("GENFREE")->verdict, Verdict::Evidence);
    EXPECT_EQ(rep.find("INDEP")->verdict, Verdict::Evidence);
    EXPECT_EQ(rep.find("MAIN-B-VERDICT")->verdict, Verdict::Pass);
    EXPECT_EQ(rep.find("MAIN-C-VERDICT")->verdict, Verdict::Pass);
    for (const auto& c : rep.checks) EXPECT_EQ(c.ms, 0.0);
    const std::string text = emit_report(rep, ReportFormat::Text);
    EXPECT_NE(text.find("no FAIL in 21 checks"), std::string::npos);
}

TEST(Replay, SplitListsCyclicSubgroups) {
    const auto rep = run_checklist({"SPLIT"}, quiet());
    ASSERT_EQ(rep.checks.size(), 1u);
    const auto& c = rep.checks[0];
    EXPECT_EQ(c.verdict, Verdict::Pass);
    EXPECT_EQ(c.stats.at("non_splitting"), 3);
    for (const char* cyc : {"(1 3 2 4)", "(1 2 3 4)", "(1 2 4 3)"}) EXPECT_NE(c.details.find(cyc), std::string::npos);
}

TEST(Replay, CharacteristicBranchesSkip) {
    const auto f2 = run_checklist({"CONIC-B", "SIGMA-TABLE"}, quiet({"F2"}));
    EXPECT_EQ(f2.find("CONIC-B")->verdict, Verdict::Skipped);
    EXPECT_EQ(f2.find("SIGMA-TABLE")->verdict, Verdict::Skipped);
    const auto q = run_checklist({"CONIC-C", "CHAR2-TABLE"}, quiet({"Q"}));
    EXPECT_EQ(q.find("CONIC-C")->verdict, Verdict::Skipped);
    EXPECT_EQ(q.find("CHAR2-TABLE")->verdict, Verdict::Skipped);
}

TEST(Replay, IndependenceTextInCharTwo) {
    const auto rep = run_checklist({"INDEP"}, quiet({"F2"}));
    EXPECT_NE(rep.find("INDEP")->details.find("ASSUMED-BY-PAPER"), std::string::npos);
}

TEST(Replay, JsonIsDeterministicWithoutTiming) {
    const auto a = emit_report(run_checklist({}, quiet()), ReportFormat::Json);
    const auto b = emit_report(run_checklist({}, quiet()), ReportFormat::Json);
    EXPECT_EQ(a, b);
    const auto doc = nlohmann::json::parse(a);
    EXPECT_EQ(doc["run"]["seed"], 0);
    EXPECT_EQ(doc["checks"].size(), 21u);
    EXPECT_EQ(doc["run"]["version"], kVersion);
    for (const auto& c : doc["checks"]) {
        EXPECT_TRUE(c.contains("id") && c.contains("verdict") && c.contains("anchor") && c.contains("details"));
    }
}

TEST(Replay, SeedChangesSamplesOnly) {
    RunConfig c = quiet();
    c.seed = 7;
    const auto rep = run_checklist({"GENFREE"}, c);
    const auto& g = *rep.find("GENFREE");
    EXPECT_EQ(g.stats.at("samples"), 100);
    EXPECT_EQ(g.stats.at("explained_by_reflection"), 100 - g.stats.at("trivial"));
    EXPECT_EQ(g.stats.at("special_stabilizer_order"), 2);
}

TEST(Replay, ConventionSelfTest) { EXPECT_NO_THROW(validate_convention()); }

TEST(Replay, CertificateDirectoryErrorsSurfaceAsFail) {
    RunConfig c = quiet();
    c.cert_dir = "/nonexistent";
    const auto rep = run_checklist({"CERTS"}, c);
    EXPECT_EQ(rep.find("CERTS")->verdict, Verdict::Fail);
    EXPECT_TRUE(rep.has_fail());
}

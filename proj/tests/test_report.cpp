#include <uniq/report.hpp>
#include <uniq/verify.hpp>

#include <gtest/gtest.h>

using namespace uniq;

namespace {

const Rational half(1, 2);

} // namespace

TEST(Json, IntervalSetRoundTrip)
{
	std::vector<IntervalSet> sets = {
		IntervalSet::empty_set(),
		IntervalSet::all(),
		IntervalSet::point(Rational(-3, 8)),
		IntervalSet::closed_open(Rational(-1, 2), 0),
		unite(IntervalSet::open(-1, Rational(-1, 2)), IntervalSet::make(Bound::closed(1), Bound::pos_inf())),
	};
	for (const auto &s : sets) {
		json j = to_json(s);
		EXPECT_EQ(interval_set_from_json(j), s) << s;
		EXPECT_EQ(to_json(interval_set_from_json(j)).dump(), j.dump());
	}
	EXPECT_EQ(to_json(IntervalSet::all()).dump(), R"([[["-inf","open"],["+inf","open"]]])");
	EXPECT_THROW(bound_from_json(json::array({"1/2", "half-open"})), std::exception);
}

TEST(Json, ParamsRoundTrip)
{
	ProblemParams p{4, Rational(3, 10), Rational(20, 17)};
	EXPECT_EQ(params_json(p).dump(), R"({"alpha":"20/17","n":4,"s":"3/10"})");
	auto q = params_from_json(params_json(p));
	EXPECT_EQ(q.n, p.n);
	EXPECT_EQ(q.s, p.s);
	EXPECT_EQ(q.alpha, p.alpha);
}

TEST(Verdict, FeasibleDocument)
{
	auto d = check_scenario(ScenarioId::SubcriticalUsual, {3, half, Rational(3, 2)});
	EXPECT_TRUE(d.applicable);
	EXPECT_TRUE(d.feasible);
	ASSERT_TRUE(d.sigma_interval.has_value());
	json j = to_json(d);
	EXPECT_EQ(j["sigma_interval"].dump(), R"([["-1/2","closed"],["0","open"]])");
	EXPECT_EQ(j["kind"], "verdict");
	EXPECT_EQ(j["version"], tool_version());
	EXPECT_TRUE(j["violated"].empty());
	ASSERT_TRUE(j["witness"].is_object());
	EXPECT_TRUE(j["witness"].contains("sigma"));
}

TEST(Verdict, InfeasibleAndInapplicable)
{
	auto d = check_scenario(ScenarioId::SubcriticalUsual, {3, half, 2});
	EXPECT_FALSE(d.feasible);
	EXPECT_FALSE(d.witness.has_value());
	EXPECT_FALSE(d.violated.empty());
	auto g = check_scenario(ScenarioId::CriticalHighDim, {3, half, Rational(4, 3)});
	EXPECT_FALSE(g.applicable);
	EXPECT_FALSE(g.feasible);
	ASSERT_TRUE(g.guard.has_value());
	EXPECT_EQ(*g.guard, "n >= 4 and alpha = 4/(n-2s)");
}

TEST(Verdict, RoundTripIsByteIdentical)
{
	std::vector<VerdictDocument> docs = {
		check_scenario(ScenarioId::SubcriticalUsual, {3, half, Rational(3, 2)}),
		check_scenario(ScenarioId::SubcriticalUsual, {3, half, 2}),
		check_scenario(ScenarioId::HolderUsual, {3, half, 1}),
		check_predicate(PredicateId::Thm11, {3, half, 1}),
		check_auto({3, half, Rational(3, 2)}),
	};
	for (const auto &d : docs) {
		json j = to_json(d);
		auto back = verdict_from_json(j);
		EXPECT_TRUE(back == d) << j.dump();
		EXPECT_EQ(to_json(back).dump(), j.dump());
	}
}

TEST(Verdict, AutoIsUnionOfApplicable)
{
	auto yes = check_auto({3, half, Rational(3, 2)});
	EXPECT_EQ(yes.target_kind, "auto");
	EXPECT_TRUE(yes.applicable);
	EXPECT_TRUE(yes.feasible);
	ASSERT_EQ(yes.details.size(), 2u); // the two subcritical scenarios
	bool any = false;
	for (const auto &x : yes.details)
		any = any || x.feasible;
	EXPECT_TRUE(any);
	auto no = check_auto({3, half, 3});
	EXPECT_FALSE(no.feasible);
	for (const auto &x : no.details)
		EXPECT_FALSE(x.feasible);
	auto low = check_auto({3, half, Rational(3, 4)});
	EXPECT_TRUE(low.feasible);
	for (const auto &x : low.details)
		EXPECT_TRUE(x.target == "holder-usual" || x.target == "holder-better") << x.target;
}

TEST(Report, S0Document)
{
	Rational tol(1, 1000000);
	json j = s0_json(5, tol, s0(5, tol));
	EXPECT_EQ(j["p_lower"], 1);
	EXPECT_EQ(j["p_upper"], -1);
	EXPECT_EQ(j["tol"], "1/1000000");
	EXPECT_LE(Rational::parse(j["upper"].get<std::string>()) - Rational::parse(j["lower"].get<std::string>()), tol);
	EXPECT_EQ(j["lower_decimal"].get<std::string>().substr(0, 7), "0.32555");
}

TEST(Report, SigmaDocument)
{
	ProblemParams p{3, half, Rational(3, 2)};
	json j = sigma_json(ScenarioId::SubcriticalUsual, p, sigma_window(ScenarioId::SubcriticalUsual, p));
	EXPECT_TRUE(j["agree"].get<bool>());
	EXPECT_EQ(j["engine"], j["closed_form"]);
	EXPECT_TRUE(j["differences"].empty());
}

TEST(Suite, Semantics)
{
	SuiteResult r{"x", {}};
	EXPECT_FALSE(r.passed()); // no checks is not a pass
	r.checks.push_back({"subset: a", true, "", nullptr});
	r.checks.push_back({"equivalence: b", false, "1 mismatch", nullptr});
	EXPECT_FALSE(r.passed());
	EXPECT_TRUE(r.passed_prefix("subset:"));
	EXPECT_FALSE(r.passed_prefix("equivalence:"));
	EXPECT_FALSE(r.passed_prefix("disjoint:"));
	ASSERT_NE(r.find("equiv"), nullptr);
	EXPECT_EQ(r.find("equiv")->detail, "1 mismatch");
	json j = verify_json("x", {r});
	EXPECT_FALSE(j["passed"].get<bool>());
	EXPECT_EQ(j["suites"][0]["checks"].size(), 2u);
	EXPECT_NE(text_report(r).find("[FAIL] equivalence: b: 1 mismatch"), std::string::npos);
	EXPECT_THROW(run_suite("nope"), parse_error);
	EXPECT_FALSE(verify_json("none", {})["passed"].get<bool>());
}

TEST(Suite, ChainsAndThresholdsPass)
{
	auto c = run_suite("chains");
	ASSERT_EQ(c.size(), 1u);
	EXPECT_TRUE(c[0].passed()) << text_report(c[0]);
	auto t = thresholds_suite();
	EXPECT_TRUE(t.passed()) << text_report(t);
}

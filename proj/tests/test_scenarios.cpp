#include <uniq/predicates.hpp>
#include <uniq/scenarios.hpp>

#include <gtest/gtest.h>

#include <algorithm>

using namespace uniq;

namespace {

const Rational half(1, 2);

bool has(const std::vector<std::string> &v, const std::string &x) { return std::find(v.begin(), v.end(), x) != v.end(); }

ConstraintSystem pinned(const ConstraintSystem &s, const Rational &sigma)
{
	ConstraintSystem out = s;
	out.add(eq(Var::sigma, sigma, "pin"));
	return out;
}

ProblemParams crit(int n, const Rational &s) { return {n, s, energy_critical(n, s)}; }

} // namespace

TEST(ScenarioIds, RoundTrip)
{
	for (ScenarioId id : all_scenarios)
		EXPECT_EQ(parse_scenario(to_string(id)), id);
	EXPECT_EQ(parse_scenario("subcritical-usual"), ScenarioId::SubcriticalUsual);
	EXPECT_FALSE(try_parse_scenario("thm11"));
	EXPECT_THROW(parse_scenario("nope"), parse_error);
	EXPECT_TRUE(is_critical(ScenarioId::CriticalHighDim));
	EXPECT_FALSE(is_critical(ScenarioId::HolderBetter));
}

TEST(Params, Validation)
{
	EXPECT_NO_THROW((ProblemParams{3, half, 1}.validate()));
	EXPECT_THROW((ProblemParams{3, 0, 1}.validate()), error);
	EXPECT_THROW((ProblemParams{3, Rational(3, 2), 1}.validate()), error);
	EXPECT_THROW((ProblemParams{3, half, 0}.validate()), error);
	EXPECT_THROW((ProblemParams{1, Rational(1, 4), 1}.validate()), error);
	EXPECT_EQ(critical_alpha(3, half), 2);
	EXPECT_EQ(energy_critical(4, half), Rational(4, 3));
	EXPECT_EQ(distributional_critical(4, half), Rational(5, 3));
}

TEST(Guards, Routing)
{
	EXPECT_TRUE(applicable(ScenarioId::SubcriticalUsual, {3, half, 1}));
	EXPECT_FALSE(applicable(ScenarioId::SubcriticalUsual, {3, half, Rational(3, 4)}));
	EXPECT_TRUE(applicable(ScenarioId::HolderUsual, {3, half, Rational(3, 4)}));
	EXPECT_FALSE(applicable(ScenarioId::HolderUsual, {3, half, 1}));
	EXPECT_TRUE(applicable(ScenarioId::CriticalN3Energy, crit(3, Rational(3, 4))));
	EXPECT_FALSE(applicable(ScenarioId::CriticalN3Energy, {3, Rational(3, 4), 2}));
	EXPECT_FALSE(applicable(ScenarioId::CriticalHighDim, crit(3, Rational(3, 4))));
	EXPECT_EQ(failed_guard(ScenarioId::SubcriticalUsual, {3, half, Rational(1, 4)}), std::optional<std::string>("alpha >= 1"));
	try {
		build_scenario(ScenarioId::SubcriticalUsual, {3, half, Rational(1, 4)});
		FAIL() << "guard not enforced";
	} catch (const scenario_not_applicable &e) {
		EXPECT_EQ(e.id, ScenarioId::SubcriticalUsual);
		EXPECT_EQ(e.guard, "alpha >= 1");
	}
}

TEST(SubcriticalUsual, FeasibleWithWindow)
{
	ProblemParams p{3, half, Rational(3, 2)};
	auto sys = build_scenario(ScenarioId::SubcriticalUsual, p);
	Verdict v = is_feasible(sys);
	ASSERT_TRUE(v.feasible);
	EXPECT_TRUE(check_assignment(sys, v.witness).empty());
	EXPECT_EQ(v.witness.at(Var::sigma), Rational(-1, 4));
	EXPECT_EQ(project_interval(sys, Var::sigma), IntervalSet::closed_open(Rational(-1, 2), 0));
}

// Pinning sigma and re-deciding is an independent route to the window's ends.
TEST(SubcriticalUsual, WindowEndsByPinning)
{
	auto sys = build_scenario(ScenarioId::SubcriticalUsual, {3, half, Rational(3, 2)});
	const Rational tiny(1, 1000000);
	EXPECT_TRUE(is_feasible(pinned(sys, Rational(-1, 2))).feasible);
	EXPECT_FALSE(is_feasible(pinned(sys, Rational(-1, 2) - tiny)).feasible);
	EXPECT_TRUE(is_feasible(pinned(sys, -tiny)).feasible);
	EXPECT_FALSE(is_feasible(pinned(sys, 0)).feasible);
}

TEST(SubcriticalUsual, InfeasibleCertificate)
{
	auto sys = build_scenario(ScenarioId::SubcriticalUsual, {3, half, 2});
	Verdict v = is_feasible(sys);
	ASSERT_FALSE(v.feasible);
	EXPECT_TRUE(has(v.certificate, "bilinear:0<1/r+sigma/n"));
	// the certificate alone is contradictory
	ConstraintSystem core(sys.variables());
	for (const auto &c : sys.constraints())
		if (has(v.certificate, c.label))
			core.add(c);
	EXPECT_FALSE(is_feasible(core).feasible);
	EXPECT_TRUE(project_interval(sys, Var::sigma).empty());
}

TEST(SubcriticalUsual, UnguardedBelowOne)
{
	auto sys = build_scenario(ScenarioId::SubcriticalUsual, {3, half, Rational(1, 4)}, GuardPolicy::skip);
	Verdict v = is_feasible(sys);
	ASSERT_FALSE(v.feasible);
	EXPECT_TRUE(has(v.certificate, "bilinear:1/r+sigma/n<=1/2"));
	EXPECT_TRUE(has(v.certificate, "bilinear:p2>=2 (besov)"));
}

// The closed form describes the window inside the thm11 region only.
TEST(SigmaWindows, SubcriticalUsualMatchesClosedForm)
{
	int checked = 0;
	for (int n : {3, 4, 5})
		for (const Rational &s : {Rational(1, 4), half, Rational(3, 4)})
			for (const Rational &a : {Rational(1), Rational(9, 8), Rational(5, 4)}) {
				ProblemParams p{n, s, a};
				if (!predicate_holds(PredicateId::Thm11, p))
					continue;
				++checked;
				auto w = sigma_window(ScenarioId::SubcriticalUsual, p);
				EXPECT_TRUE(w.agree()) << p.str() << " " << set_text(w.engine) << " vs " << set_text(w.closed_form);
			}
	EXPECT_GT(checked, 10);
}

TEST(SigmaWindows, HolderUsualMatchesClosedForm)
{
	auto w = sigma_window(ScenarioId::HolderUsual, {3, half, Rational(3, 4)});
	EXPECT_TRUE(w.agree());
	EXPECT_EQ(w.engine, IntervalSet::open(Rational(-1, 4), 0));
}

TEST(SigmaWindows, StrictnessOnlyDifferenceIsClassified)
{
	auto w = sigma_window(ScenarioId::HolderBetter, {4, Rational(1, 4), Rational(3, 4)});
	EXPECT_EQ(w.engine, IntervalSet::closed_open(Rational(-1, 6), 0));
	EXPECT_EQ(w.closed_form, IntervalSet::open(Rational(-1, 6), 0));
	ASSERT_EQ(w.differences.size(), 1u);
	EXPECT_EQ(w.differences[0].where, "lower");
	EXPECT_TRUE(w.differences[0].strictness_only);
}

TEST(SigmaWindows, BetterRegularityNarrowerThanClosedForm)
{
	// The bilinear identities force 1/p2 > 0, which the closed form omits.
	auto w = sigma_window(ScenarioId::SubcriticalBetter, {4, half, Rational(3, 2)});
	EXPECT_TRUE(w.engine.empty());
	EXPECT_EQ(w.closed_form, IntervalSet::closed_open(Rational(-1, 2), Rational(-5, 12)));
	ASSERT_EQ(w.differences.size(), 1u);
	EXPECT_EQ(w.differences[0].where, "shape");
	EXPECT_FALSE(w.differences[0].strictness_only);
}

TEST(WindowDifferences, Classification)
{
	auto a = IntervalSet::closed_open(Rational(-1, 2), 0), b = IntervalSet::open(Rational(-1, 2), 0),
	     c = IntervalSet::open(Rational(-1, 3), 0);
	EXPECT_TRUE(window_differences(a, a).empty());
	auto d = window_differences(a, b);
	ASSERT_EQ(d.size(), 1u);
	EXPECT_TRUE(d[0].strictness_only);
	EXPECT_EQ(d[0].engine, "[-1/2");
	EXPECT_EQ(d[0].closed_form, "(-1/2");
	d = window_differences(a, c);
	ASSERT_EQ(d.size(), 1u);
	EXPECT_FALSE(d[0].strictness_only);
	EXPECT_EQ(set_text(a), "[-1/2, 0)");
	EXPECT_EQ(set_text({}), "{}");
}

TEST(CriticalHighDim, FourDimensions)
{
	auto sys = build_scenario(ScenarioId::CriticalHighDim, crit(4, half));
	Verdict v = is_feasible(sys);
	ASSERT_TRUE(v.feasible);
	EXPECT_EQ(v.witness.at(Var::sigma), Rational(-1, 3));
	EXPECT_TRUE(check_assignment(sys, v.witness).empty());
	EXPECT_EQ(project_interval(sys, Var::sigma), IntervalSet::closed_open(Rational(-1, 2), Rational(-1, 6)));
	EXPECT_FALSE(is_feasible(build_scenario(ScenarioId::CriticalHighDim, crit(4, Rational(3, 10)))).feasible);
}

TEST(CriticalHighDim, FiveDimensionsAroundThreshold)
{
	for (const Rational &s : {Rational(3, 8), half, Rational(3, 4)})
		EXPECT_TRUE(is_feasible(build_scenario(ScenarioId::CriticalHighDim, crit(5, s))).feasible) << s;
	for (const Rational &s : {Rational(1, 8), Rational(1, 4)})
		EXPECT_FALSE(is_feasible(build_scenario(ScenarioId::CriticalHighDim, crit(5, s))).feasible) << s;
}

TEST(CriticalLowDim, FeasibilityRanges)
{
	auto dist = [](int n, const Rational &s) { return ProblemParams{n, s, distributional_critical(n, s)}; };
	EXPECT_TRUE(is_feasible(build_scenario(ScenarioId::CriticalN2Low, dist(2, Rational(1, 4)))).feasible);
	EXPECT_FALSE(is_feasible(build_scenario(ScenarioId::CriticalN2Low, dist(2, half))).feasible);
	EXPECT_TRUE(is_feasible(build_scenario(ScenarioId::CriticalN2High, dist(2, Rational(3, 4)))).feasible);
	EXPECT_TRUE(is_feasible(build_scenario(ScenarioId::CriticalN3Mass, dist(3, Rational(3, 8)))).feasible);
	EXPECT_FALSE(is_feasible(build_scenario(ScenarioId::CriticalN3Mass, dist(3, Rational(1, 8)))).feasible);
	EXPECT_FALSE(is_feasible(build_scenario(ScenarioId::CriticalN3Energy, crit(3, half))).feasible);
	EXPECT_TRUE(is_feasible(build_scenario(ScenarioId::CriticalN3Energy, crit(3, Rational(3, 4)))).feasible);
	EXPECT_THROW(build_scenario(ScenarioId::CriticalN2Low, dist(3, Rational(1, 4))), scenario_not_applicable);
}

TEST(CriticalLowDim, WindowsAreThePinnedValues)
{
	auto w = sigma_window(ScenarioId::CriticalN3Energy, crit(3, Rational(3, 4)));
	EXPECT_EQ(w.engine, IntervalSet::point(Rational(-1, 4)));
	EXPECT_TRUE(w.agree());
	auto m = sigma_window(ScenarioId::CriticalN3Mass, {3, Rational(3, 8), Rational(5, 3)});
	EXPECT_EQ(m.engine, IntervalSet::point(Rational(-3, 8)));
	EXPECT_TRUE(m.agree());
	auto l = sigma_window(ScenarioId::CriticalN2Low, {2, Rational(1, 4), Rational(5, 3)});
	EXPECT_EQ(l.engine, IntervalSet::open(Rational(-1, 4), 0));
}

TEST(StatedAssignments, ZeroViolations)
{
	struct Case {
		ScenarioId id;
		int n;
		Rational s;
		bool energy;
	};
	for (const auto &c : {Case{ScenarioId::CriticalN2Low, 2, Rational(1, 5), false},
	                      Case{ScenarioId::CriticalN2High, 2, Rational(3, 5), false},
	                      Case{ScenarioId::CriticalN3Mass, 3, Rational(2, 5), false},
	                      Case{ScenarioId::CriticalN3Energy, 3, Rational(4, 5), true}}) {
		ProblemParams p{c.n, c.s, c.energy ? energy_critical(c.n, c.s) : distributional_critical(c.n, c.s)};
		auto range = stated_free_range(c.id, c.s);
		ASSERT_FALSE(range.empty()) << to_string(c.id);
		const auto &iv = range.intervals()[0];
		Rational f = (iv.lo.value.value() + iv.hi.value.value()) / 2;
		auto v = check_assignment(build_scenario(c.id, p), stated_assignment(c.id, c.s, f));
		EXPECT_TRUE(v.empty()) << to_string(c.id) << ": " << (v.empty() ? "" : v[0].label);
	}
	EXPECT_THROW(stated_assignment(ScenarioId::SubcriticalUsual, half), error);
}

TEST(StatedAssignments, OutsideRangeViolates)
{
	// eps must be positive in the low-regularity n = 2 construction
	const Rational s(1, 5);
	ProblemParams p{2, s, distributional_critical(2, s)};
	auto v = check_assignment(build_scenario(ScenarioId::CriticalN2Low, p), stated_assignment(ScenarioId::CriticalN2Low, s, 0));
	EXPECT_FALSE(v.empty());
}

TEST(Labels, EveryConstraintHasAKnownFamily)
{
	std::vector<std::pair<ScenarioId, ProblemParams>> cases = {
		{ScenarioId::SubcriticalUsual, {3, half, Rational(3, 2)}},
		{ScenarioId::SubcriticalBetter, {3, half, Rational(3, 2)}},
		{ScenarioId::HolderUsual, {4, half, Rational(3, 4)}},
		{ScenarioId::HolderBetter, {4, half, Rational(3, 4)}},
		{ScenarioId::CriticalN2Low, {2, Rational(1, 4), distributional_critical(2, Rational(1, 4))}},
		{ScenarioId::CriticalN2High, {2, Rational(3, 4), distributional_critical(2, Rational(3, 4))}},
		{ScenarioId::CriticalN3Mass, {3, Rational(3, 8), distributional_critical(3, Rational(3, 8))}},
		{ScenarioId::CriticalN3Energy, crit(3, Rational(3, 4))},
		{ScenarioId::CriticalHighDim, crit(5, half)},
	};
	for (const auto &[id, p] : cases) {
		auto sys = build_scenario(id, p);
		EXPECT_TRUE(unlabeled_constraints(sys).empty()) << to_string(id);
		EXPECT_GT(sys.constraints().size(), 10u);
	}
	EXPECT_EQ(label_family("acceptable(q,r):x"), "acceptable");
	EXPECT_EQ(label_family("bilinear:sigma<0"), "bilinear");
}

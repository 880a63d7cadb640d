#include <uniq/predicates.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace uniq;

namespace {

const Rational half(1, 2);

bool holds(PredicateId id, int n, const Rational &s, const Rational &a) { return predicate_holds(id, {n, s, a}); }

// Smaller root of 4(n-1)s^2 - (2n^2+8n-8)s + n^2 in floating point.
double s0_double(int n)
{
	double b = 2.0 * n * n + 8.0 * n - 8.0, a = 4.0 * (n - 1), c = 1.0 * n * n;
	return (b - std::sqrt(b * b - 4 * a * c)) / (2 * a);
}

double to_double(const Rational &r) { return r.mpq().get_d(); }

} // namespace

TEST(PredicateIds, RoundTrip)
{
	for (PredicateId id : all_predicates)
		EXPECT_EQ(try_parse_predicate(to_string(id)), id);
	EXPECT_FALSE(try_parse_predicate("subcritical-usual"));
	EXPECT_TRUE(is_theorem(PredicateId::Thm16));
	EXPECT_FALSE(is_theorem(PredicateId::Kato));
	EXPECT_THROW(theorem_predicate(PredicateId::Kato, {3, half, 1}), error);
	EXPECT_THROW(literature_predicate(PredicateId::Thm11, {3, half, 1}), error);
}

TEST(Thm11, WindowAtHalf)
{
	// [max(1, 2s/(n-2s)), min(4/(n-2s), (n+2s)/(n-2s), (4s+4-n/(n-1))/(n-2s))) = [1, 2) at n=3, s=1/2
	EXPECT_TRUE(holds(PredicateId::Thm11, 3, half, 1));
	EXPECT_TRUE(holds(PredicateId::Thm11, 3, half, Rational(15, 8)));
	EXPECT_FALSE(holds(PredicateId::Thm11, 3, half, 2));
	EXPECT_FALSE(holds(PredicateId::Thm11, 3, half, Rational(63, 64)));
	EXPECT_FALSE(holds(PredicateId::Thm11, 6, half, Rational(11, 10)));
	EXPECT_FALSE(holds(PredicateId::Thm11, 3, 1, Rational(3, 2)));
}

TEST(Thm12, WindowBelowOne)
{
	// (2s/(n-2s), 1) at n=3, s=1/2
	EXPECT_FALSE(holds(PredicateId::Thm12, 3, half, half));
	EXPECT_TRUE(holds(PredicateId::Thm12, 3, half, Rational(3, 4)));
	EXPECT_FALSE(holds(PredicateId::Thm12, 3, half, 1));
	// n >= 4 adds alpha < 4/(n-2s)
	EXPECT_TRUE(holds(PredicateId::Thm12, 6, half, Rational(3, 4)));
	EXPECT_TRUE(holds(PredicateId::Thm12, 7, Rational(3, 4), Rational(71, 100)));
	EXPECT_FALSE(holds(PredicateId::Thm12, 7, Rational(3, 4), Rational(73, 100)));
}

TEST(CriticalTheorems, Thresholds)
{
	auto e = [](int n, const Rational &s) { return energy_critical(n, s); };
	auto d = [](int n, const Rational &s) { return distributional_critical(n, s); };
	EXPECT_TRUE(holds(PredicateId::Thm16, 3, Rational(3, 4), e(3, Rational(3, 4))));
	EXPECT_FALSE(holds(PredicateId::Thm16, 3, half, e(3, half)));
	EXPECT_FALSE(holds(PredicateId::Thm16, 3, Rational(3, 4), e(3, Rational(3, 4)) - Rational(1, 100)));
	EXPECT_FALSE(holds(PredicateId::Thm16, 4, Rational(1, 3), e(4, Rational(1, 3))));
	EXPECT_TRUE(holds(PredicateId::Thm16, 4, Rational(34, 100), e(4, Rational(34, 100))));
	EXPECT_FALSE(holds(PredicateId::Thm16, 5, Rational(32, 100), e(5, Rational(32, 100))));
	EXPECT_TRUE(holds(PredicateId::Thm16, 5, Rational(33, 100), e(5, Rational(33, 100))));
	EXPECT_TRUE(holds(PredicateId::Thm15, 2, half, d(2, half)));
	EXPECT_TRUE(holds(PredicateId::Thm15, 3, Rational(3, 8), d(3, Rational(3, 8))));
	EXPECT_FALSE(holds(PredicateId::Thm15, 3, Rational(1, 4), d(3, Rational(1, 4))));
	EXPECT_FALSE(holds(PredicateId::Thm15, 3, half, d(3, half)));
}

TEST(Literature, HandComputedPoints)
{
	// Kato at n=3, s=1/2: alpha < min(2, 3/2)
	EXPECT_TRUE(holds(PredicateId::Kato, 3, half, 1));
	EXPECT_FALSE(holds(PredicateId::Kato, 3, half, Rational(3, 2)));
	// Rogers at n=3, s=1/2: 3/2 <= alpha < min(5/3, 2)
	EXPECT_TRUE(holds(PredicateId::Rogers, 3, half, Rational(3, 2)));
	EXPECT_TRUE(holds(PredicateId::Rogers, 3, half, Rational(8, 5)));
	EXPECT_FALSE(holds(PredicateId::Rogers, 3, half, Rational(5, 3)));
	// Furioli-Terraneo at n=3, s=1/2: 1 < alpha < min(2, 2, 2, 2)
	EXPECT_FALSE(holds(PredicateId::FurioliTerraneo, 3, half, 1));
	EXPECT_TRUE(holds(PredicateId::FurioliTerraneo, 3, half, Rational(3, 2)));
	// Win-Tsutsumi subcritical only for n=3, 1/2 < s < 1
	EXPECT_FALSE(holds(PredicateId::WinTsutsumiSub, 3, half, Rational(19, 10)));
	// at s=5/8: [max(44/21, 15/7), min(16/7, 17/7)) = [15/7, 16/7)
	EXPECT_TRUE(holds(PredicateId::WinTsutsumiSub, 3, Rational(5, 8), Rational(15, 7)));
	EXPECT_FALSE(holds(PredicateId::WinTsutsumiSub, 3, Rational(5, 8), Rational(16, 7)));
	EXPECT_TRUE(holds(PredicateId::CazenaveCrit, 3, 1, 4));
	EXPECT_FALSE(holds(PredicateId::CazenaveCrit, 3, half, 2));
}

TEST(OpenCases, DisjointFromTheorems)
{
	for (int n : {3, 4, 5})
		for (int i = 1; i < 16; ++i)
			for (int j = 1; j <= 64; ++j) {
				ProblemParams p{n, Rational(i, 16), Rational(j, 16)};
				if (predicate_holds(PredicateId::OpenSub, p)) {
					EXPECT_FALSE(predicate_holds(PredicateId::Thm11, p)) << p.str();
					EXPECT_FALSE(predicate_holds(PredicateId::Thm12, p)) << p.str();
				}
			}
	EXPECT_TRUE(holds(PredicateId::OpenCrit, 4, Rational(1, 4), energy_critical(4, Rational(1, 4))));
	EXPECT_FALSE(holds(PredicateId::OpenCrit, 4, half, energy_critical(4, half)));
	EXPECT_TRUE(holds(PredicateId::OpenCrit, 5, Rational(1, 4), energy_critical(5, Rational(1, 4))));
}

TEST(S0, EnclosureMatchesQuadraticFormula)
{
	for (int n : {5, 6, 7, 10}) {
		Rational tol(1, 1000000000);
		auto e = s0(n, tol);
		EXPECT_LE(e.upper - e.lower, tol);
		EXPECT_GT(s0_polynomial(n, e.lower).sign(), 0);
		EXPECT_LT(s0_polynomial(n, e.upper).sign(), 0);
		double r = s0_double(n);
		EXPECT_LE(to_double(e.lower), r + 1e-12) << n;
		EXPECT_GE(to_double(e.upper), r - 1e-12) << n;
	}
	EXPECT_NEAR(s0_double(5), 0.3255587, 1e-7);
	EXPECT_NEAR(s0_double(6), 0.3423589, 1e-7);
	EXPECT_THROW(s0(4), error);
	EXPECT_THROW(s0(5, 0), error);
}

TEST(S0, CompareInsideEnclosureThrows)
{
	auto e = s0(5, Rational(1, 1000));
	EXPECT_EQ(compare_with_s0(5, Rational(3, 10), Rational(1, 1000)), -1);
	EXPECT_EQ(compare_with_s0(5, Rational(1, 3), Rational(1, 1000)), 1);
	EXPECT_THROW(compare_with_s0(5, (e.lower + e.upper) / 2, Rational(1, 1000)), undecidable_at_precision);
}

TEST(Chains, CounterexampleAtHalf)
{
	auto rep = verify_chain(ChainKind::BetterRegularity, 3, {half});
	const auto &x = rep.samples.at(0);
	EXPECT_EQ(x.terms[1], ExtRational(Rational(7, 3)));
	EXPECT_EQ(x.terms[2], ExtRational(Rational(9, 4)));
	EXPECT_EQ(x.cap, 2);
	EXPECT_TRUE(x.steps[0].holds);
	EXPECT_FALSE(x.steps[1].holds);
	EXPECT_TRUE(x.steps[1].masked);
	EXPECT_TRUE(rep.passed());
	EXPECT_EQ(rep.failures(), 1u);
}

TEST(Chains, HoldsBelowThreshold)
{
	for (int n : {3, 4, 5}) {
		auto rep = verify_chain(ChainKind::BetterRegularity, n, chain_samples());
		EXPECT_TRUE(rep.passed());
		for (const auto &x : rep.samples)
			if (x.s < Rational(n, 4 * (n - 1))) {
				EXPECT_TRUE(x.steps[0].holds && x.steps[1].holds) << n << " " << x.s;
			}
	}
	for (int n : {3, 4, 5, 6})
		EXPECT_TRUE(verify_chain(ChainKind::HolderBetter, n, chain_samples()).passed()) << n;
	EXPECT_THROW(verify_chain(ChainKind::BetterRegularity, 6, chain_samples()), error);
	EXPECT_EQ(chain_samples().size(), 32u);
	EXPECT_EQ(chain_samples().front(), Rational(1, 64));
}

TEST(Chains, UnmaskedFailureIsReported)
{
	// t1 >= t2 with the cap above t2
	ChainReport rep;
	ChainSample x{half, {ExtRational(1), ExtRational(3), ExtRational(2)}, Rational(5, 2), {}};
	x.steps[1].holds = false;
	x.steps[1].masked = false;
	rep.samples.push_back(x);
	EXPECT_FALSE(rep.passed());
}

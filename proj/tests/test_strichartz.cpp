#include <uniq/fourier_motzkin.hpp>
#include <uniq/strichartz.hpp>

#include <gtest/gtest.h>

#include <algorithm>

using namespace uniq;

namespace {

SpaceTimePair P(Rational q_inv, Rational r_inv) { return {std::move(q_inv), std::move(r_inv)}; }

bool has(const std::vector<std::string> &v, const std::string &x) { return std::find(v.begin(), v.end(), x) != v.end(); }

ExponentAssignment point(const SpaceTimePair &gr, const SpaceTimePair &qr)
{
	return {{Var::gamma_inv, gr.q_inv}, {Var::rho_inv, gr.r_inv}, {Var::q_inv, qr.q_inv}, {Var::r_inv, qr.r_inv}};
}

} // namespace

TEST(Acceptable, Definition)
{
	// 1/q < n(1/2 - 1/r), strictly
	EXPECT_TRUE(is_acceptable(3, P(Rational(1, 2), Rational(1, 6))));
	EXPECT_FALSE(is_acceptable(3, P(1, Rational(1, 6))));                // 1 = 3(1/2 - 1/6)
	EXPECT_TRUE(is_acceptable(3, P(0, Rational(1, 2))));                 // (inf, 2)
	EXPECT_FALSE(is_acceptable(3, P(0, Rational(1, 3))));                // q = inf needs r = 2
	EXPECT_FALSE(is_acceptable(3, P(Rational(1, 4), Rational(1, 2))));   // r = 2, q finite
	EXPECT_FALSE(is_acceptable(3, P(Rational(1, 4), Rational(3, 5))));   // r < 2
	EXPECT_FALSE(is_acceptable(3, P(Rational(5, 4), Rational(1, 6))));   // q < 1
}

TEST(Admissibility, EndpointPairIsSharp)
{
	// (2, 6) with itself in three dimensions: 1/q + 1/gamma = 1 and scaling 1 = 3/2 (1 - 1/3).
	auto rep = admissibility(3, P(Rational(1, 2), Rational(1, 6)), P(Rational(1, 2), Rational(1, 6)), false);
	EXPECT_EQ(rep.mode, Mode::Sharp);
	EXPECT_TRUE(rep.failed.empty());
}

TEST(Admissibility, NonSharpDiagonal)
{
	// 1/rho = 1/r = 1/4 forces 1/gamma = 1/q = 3/8 by scaling; the sum is 3/4 < 1.
	auto rep = admissibility(3, P(Rational(3, 8), Rational(1, 4)), P(Rational(3, 8), Rational(1, 4)), true);
	EXPECT_EQ(rep.mode, Mode::NonSharp);
	EXPECT_TRUE(rep.besov_variant);
}

TEST(Admissibility, ScalingFailure)
{
	auto rep = admissibility(3, P(Rational(1, 2), Rational(1, 4)), P(Rational(1, 2), Rational(1, 4)), false);
	EXPECT_EQ(rep.mode, Mode::NotAdmissible);
	EXPECT_TRUE(has(rep.failed, "scaling"));
}

TEST(Admissibility, BesovNeedsTimeExponentsAtLeastTwo)
{
	// Non-sharp in n = 4 with 1/gamma = 5/8 > 1/2: 1/q + 5/8 = 2(1 - 1/r - 1/rho).
	SpaceTimePair gr = P(Rational(5, 8), Rational(1, 4)), qr = P(Rational(1, 8), Rational(3, 8));
	ASSERT_EQ(qr.q_inv + gr.q_inv, Rational(2) * (1 - qr.r_inv - gr.r_inv));
	EXPECT_EQ(admissibility(4, gr, qr, false).mode, Mode::NonSharp);
	auto rep = admissibility(4, gr, qr, true);
	EXPECT_EQ(rep.mode, Mode::NotAdmissible);
	EXPECT_TRUE(has(rep.failed, "besov:gamma>=2"));
}

TEST(Admissibility, TwoDimensionsExcludesInfiniteSpaceExponent)
{
	auto rep = admissibility(2, P(Rational(1, 2), 0), P(Rational(1, 2), Rational(1, 2)), false);
	EXPECT_EQ(rep.mode, Mode::NotAdmissible);
	EXPECT_TRUE(has(rep.failed, "n=2:rho<inf"));
}

TEST(Admissibility, SharpSideConditions)
{
	// Sum 1 and scaling hold; (n/2-1)/r = 1/8 = n/(2 rho) violates the strict inequality.
	ASSERT_EQ(Rational(1), Rational(3, 2) * (1 - Rational(1, 12) - Rational(1, 4)));
	auto edge = admissibility(3, P(Rational(3, 4), Rational(1, 12)), P(Rational(1, 4), Rational(1, 4)), false);
	EXPECT_EQ(edge.mode, Mode::NotAdmissible);
	EXPECT_TRUE(has(edge.failed, "sharp:(n/2-1)/r<n/(2rho)"));

	// 1/rho = 1/3 > 1/gamma = 1/6
	auto rep = admissibility(3, P(Rational(1, 6), Rational(1, 3)), P(Rational(5, 6), 0), false);
	EXPECT_EQ(rep.mode, Mode::NotAdmissible);
	EXPECT_TRUE(has(rep.failed, "sharp:1/rho<=1/gamma"));
	EXPECT_TRUE(has(rep.failed, "sharp:(n/2-1)/rho<n/(2r)"));
	EXPECT_FALSE(has(rep.failed, "sharp:1/r<=1/q"));
}

TEST(Fragment, FeasibleInEachMode)
{
	for (int n : {2, 3, 4, 5})
		for (bool besov : {false, true}) {
			EXPECT_TRUE(is_feasible(admissibility_fragment(n, besov, Mode::NonSharp)).feasible) << n;
			// n = 2: sharp scaling forces 1/r + 1/rho = 0, and rho = inf is excluded
			EXPECT_EQ(is_feasible(admissibility_fragment(n, besov, Mode::Sharp)).feasible, n > 2) << n;
		}
	EXPECT_THROW(admissibility_fragment(1, false, Mode::Sharp), error);
	EXPECT_THROW(estimate_constraints(3, false, Mode::NotAdmissible, slot(Var::gamma_inv, Var::rho_inv, "a"),
	                                  slot(Var::q_inv, Var::r_inv, "b")),
	             error);
}

TEST(Fragment, LabelsNamePairs)
{
	auto s = admissibility_fragment(3, true, Mode::NonSharp);
	std::vector<std::string> labels;
	for (const auto &c : s.constraints())
		labels.push_back(c.label);
	EXPECT_TRUE(has(labels, "acceptable(gamma,rho):1/q < n(1/2-1/r)"));
	EXPECT_TRUE(has(labels, "admissible(gamma,rho;q,r):scaling"));
	EXPECT_TRUE(has(labels, "besov(gamma,rho;q,r):gamma>=2"));
}

// The point evaluator and the constraint encoding are written separately;
// on a lattice of finite-q pairs they must classify every point alike.
TEST(Fragment, AgreesWithPointEvaluator)
{
	std::vector<Rational> qs, rs;
	for (int k = 1; k <= 8; ++k)
		qs.emplace_back(k, 8);
	for (int k = 0; k <= 6; ++k)
		rs.emplace_back(k, 12);
	std::size_t checked = 0, sharp = 0, nonsharp = 0;
	for (int n : {2, 3, 4})
		for (bool besov : {false, true}) {
			auto fn = admissibility_fragment(n, besov, Mode::NonSharp);
			auto fs = admissibility_fragment(n, besov, Mode::Sharp);
			for (const auto &gq : qs)
				for (const auto &gr : rs)
					for (const auto &rr : rs) {
						// scaling determines 1/q
						Rational q = Rational(n, 2) * (1 - rr - gr) - gq;
						if (q.sign() <= 0 || q > 1)
							continue;
						SpaceTimePair a = P(gq, gr), b = P(q, rr);
						auto rep = admissibility(n, a, b, besov);
						bool in_n = check_assignment(fn, point(a, b)).empty();
						bool in_s = check_assignment(fs, point(a, b)).empty();
						EXPECT_EQ(rep.mode == Mode::NonSharp, in_n) << n << " " << gq << " " << gr << " " << q << " " << rr;
						EXPECT_EQ(rep.mode == Mode::Sharp, in_s) << n << " " << gq << " " << gr << " " << q << " " << rr;
						++checked;
						sharp += in_s;
						nonsharp += in_n;
					}
		}
	EXPECT_GT(checked, 200u);
	EXPECT_GT(sharp, 0u);
	EXPECT_GT(nonsharp, 0u);
}

#pragma once

#include "fourier_motzkin.hpp"
#include "params.hpp"
#include "strichartz.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uniq {

enum class ScenarioId : std::uint8_t {
	SubcriticalUsual,
	SubcriticalBetter,
	HolderUsual,
	HolderBetter,
	CriticalN2Low,
	CriticalN2High,
	CriticalN3Mass,
	CriticalN3Energy,
	CriticalHighDim,
};

inline constexpr std::array<ScenarioId, 9> all_scenarios = {
	ScenarioId::SubcriticalUsual, ScenarioId::SubcriticalBetter, ScenarioId::HolderUsual,
	ScenarioId::HolderBetter,     ScenarioId::CriticalN2Low,     ScenarioId::CriticalN2High,
	ScenarioId::CriticalN3Mass,   ScenarioId::CriticalN3Energy,  ScenarioId::CriticalHighDim,
};

inline std::string_view to_string(ScenarioId id)
{
	switch (id) {
	case ScenarioId::SubcriticalUsual: return "subcritical-usual";
	case ScenarioId::SubcriticalBetter: return "subcritical-better";
	case ScenarioId::HolderUsual: return "holder-usual";
	case ScenarioId::HolderBetter: return "holder-better";
	case ScenarioId::CriticalN2Low: return "critical-n2-low";
	case ScenarioId::CriticalN2High: return "critical-n2-high";
	case ScenarioId::CriticalN3Mass: return "critical-n3-mass";
	case ScenarioId::CriticalN3Energy: return "critical-n3-energy";
	default: return "critical-high-dim";
	}
}

inline std::optional<ScenarioId> try_parse_scenario(std::string_view s)
{
	for (ScenarioId id : all_scenarios)
		if (to_string(id) == s)
			return id;
	return std::nullopt;
}

inline ScenarioId parse_scenario(std::string_view s)
{
	if (auto id = try_parse_scenario(s))
		return *id;
	throw parse_error("unknown scenario id '" + std::string(s) + "'");
}

inline bool is_critical(ScenarioId id) { return id >= ScenarioId::CriticalN2Low; }

struct scenario_not_applicable : error {
	ScenarioId id;
	std::string guard;
	scenario_not_applicable(ScenarioId i, std::string g)
	    : error(std::string(to_string(i)) + " not applicable: requires " + g), id(i), guard(std::move(g))
	{}
};

/* The applicability guard as text, or nullopt when it holds. */
inline std::optional<std::string> failed_guard(ScenarioId id, const ProblemParams &p)
{
	const int n = p.n;
	const Rational &a = p.alpha;
	switch (id) {
	case ScenarioId::SubcriticalUsual:
	case ScenarioId::SubcriticalBetter:
		if (a < 1)
			return "alpha >= 1";
		return std::nullopt;
	case ScenarioId::HolderUsual:
	case ScenarioId::HolderBetter:
		if (a >= 1)
			return "alpha < 1";
		return std::nullopt;
	case ScenarioId::CriticalN2Low:
	case ScenarioId::CriticalN2High:
		if (n != 2 || a != distributional_critical(n, p.s))
			return "n = 2 and alpha = (n+2s)/(n-2s)";
		return std::nullopt;
	case ScenarioId::CriticalN3Mass:
		if (n != 3 || a != distributional_critical(n, p.s))
			return "n = 3 and alpha = (n+2s)/(n-2s)";
		return std::nullopt;
	case ScenarioId::CriticalN3Energy:
		if (n != 3 || a != energy_critical(n, p.s))
			return "n = 3 and alpha = 4/(n-2s)";
		return std::nullopt;
	default:
		if (n < 4 || a != energy_critical(n, p.s))
			return "n >= 4 and alpha = 4/(n-2s)";
		return std::nullopt;
	}
}

inline bool applicable(ScenarioId id, const ProblemParams &p) { return !failed_guard(id, p); }

enum class GuardPolicy : std::uint8_t { enforce, skip };

/* Hypotheses of the bilinear estimate with output exponent rho, input
 * exponent r and the auxiliary p1, p2, p3: -1 < sigma < 0, the three
 * Hölder identities and 1 < rho, r, p_i < inf. Besov asks p2 >= 2. */
inline std::vector<Constraint> bilinear_hypotheses(int n, const LinExpr &rho, const LinExpr &r, bool besov)
{
	const Rational N(n);
	const LinExpr sig(Var::sigma), p1(Var::p1_inv), p2(Var::p2_inv), p3(Var::p3_inv);
	std::vector<Constraint> out = {
		lt(-1, sig, "bilinear:-1<sigma"),
		lt(sig, 0, "bilinear:sigma<0"),
		eq(p1 + p2, LinExpr(1) - rho, "bilinear:1/rho'=1/p1+1/p2"),
		eq(p3 + r, LinExpr(1) - rho, "bilinear:1/rho'=1/p3+1/r"),
		eq(p2, r + sig / N, "bilinear:1/p2=1/r+sigma/n"),
	};
	auto range = [&](const LinExpr &x, const std::string &nm) {
		out.push_back(lt(0, x, "bilinear:" + nm + "<inf"));
		out.push_back(lt(x, 1, "bilinear:1<" + nm));
	};
	range(rho, "rho");
	range(r, "r");
	range(p1, "p1");
	range(p2, "p2");
	range(p3, "p3");
	if (besov)
		out.push_back(le(p2, Rational(1, 2), "bilinear:p2>=2 (besov)"));
	return out;
}

namespace detail {

inline void add_all(ConstraintSystem &sys, std::vector<Constraint> cs)
{
	for (auto &c : cs)
		sys.add(std::move(c));
}

/* Shared shape of the subcritical scenarios. `better` selects the
 * better-regularity choice of rho, `holder` the Sobolev carrier and the
 * Hölder chain rule. */
inline ConstraintSystem subcritical_system(const ProblemParams &p, bool better, bool holder)
{
	const int n = p.n;
	const Rational N(n), half(1, 2), &s = p.s, &a = p.alpha;
	const Rational k = (N - 2 * s) * a / (2 * N);
	const LinExpr sig(Var::sigma), rho(Var::rho_inv), r(Var::r_inv);
	const bool besov = !holder;

	std::vector<Var> vars = {Var::gamma_inv, Var::q_inv};
	if (better)
		vars.push_back(Var::lambda_inv);
	for (Var v : {Var::rho_inv, Var::r_inv, Var::p1_inv, Var::p2_inv, Var::p3_inv, Var::sigma})
		vars.push_back(v);
	ConstraintSystem sys(vars);

	LinExpr rho_choice = sig / N + half - s / N;
	if (better)
		rho_choice += LinExpr(k - Rational(2) / N);
	sys.add(eq(rho, rho_choice, "choice:1/rho"));
	if (!better)
		sys.add(eq(r, half - sig / N + s / N - k, "choice:1/r"));
	sys.add(eq(Var::p1_inv, k - sig / N, "choice:1/p1"));
	sys.add(eq(Var::p3_inv, k, "choice:1/p3"));

	PairSlot gr = slot(Var::gamma_inv, Var::rho_inv, "gamma,rho"), qr = slot(Var::q_inv, Var::r_inv, "q,r");
	add_all(sys, acceptability_constraints(n, gr));
	add_all(sys, acceptability_constraints(n, qr));
	add_all(sys, estimate_constraints(n, besov, Mode::NonSharp, gr, qr));

	add_all(sys, bilinear_hypotheses(n, rho, r, besov));
	sys.add(lt(0, r + sig / N, "bilinear:0<1/r+sigma/n"));
	if (besov)
		sys.add(le(r + sig / N, half, "bilinear:1/r+sigma/n<=1/2"));
	else
		sys.add(le(r + sig / N, 1, "bilinear:1/r+sigma/n<=1"));

	if (holder)
		sys.add(lt(-a * s, sig, "holder-chain-rule:-alpha*s<sigma"));
	else
		sys.add(ge(LinExpr(s) + sig, 0, "embedding:s>=-sigma"));

	if (better) {
		// u - v stays bounded in the output space via the auxiliary pair
		// (lambda, p), 1/p' = (2 sigma + (n-2s)(alpha+1))/(2n).
		LinExpr p_inv = LinExpr(1) - sig / N - LinExpr((N - 2 * s) * (a + 1) / (2 * N));
		PairSlot lp{LinExpr(Var::lambda_inv), p_inv, "lambda,p"};
		add_all(sys, acceptability_constraints(n, lp));
		add_all(sys, estimate_constraints(n, false, Mode::Sharp, gr, lp));
		Rational lo = (N - 2) * (N - 2) / (2 * N * (N - 1)), hi = (N - 2) / (2 * (N - 1));
		sys.add(lt(lo, rho, "boundedness:(n-2)^2/(2n(n-1))<1/rho"));
		sys.add(lt(rho, hi, "boundedness:1/rho<(n-2)/(2(n-1))"));
	}
	return sys;
}

/* Pairs of the two-dimensional and mass-critical three-dimensional
 * constructions: (a,b) against the bounding pair (lambda, .) and against
 * (q,r), both non-sharp, with the bilinear estimate for r, b. */
inline void critical_low_pairs(ConstraintSystem &sys, int n, const LinExpr &lambda_space)
{
	PairSlot ab = slot(Var::a_inv, Var::b_inv, "a,b"), qr = slot(Var::q_inv, Var::r_inv, "q,r");
	PairSlot lp{LinExpr(Var::lambda_inv), lambda_space, "lambda,."};
	add_all(sys, acceptability_constraints(n, ab));
	add_all(sys, acceptability_constraints(n, lp));
	add_all(sys, acceptability_constraints(n, qr));
	add_all(sys, estimate_constraints(n, false, Mode::NonSharp, ab, lp));
	add_all(sys, estimate_constraints(n, false, Mode::NonSharp, ab, qr));
	add_all(sys, bilinear_hypotheses(n, LinExpr(Var::b_inv), LinExpr(Var::r_inv), false));
}

inline ConstraintSystem critical_n2_low(const ProblemParams &p)
{
	const Rational &s = p.s, half(1, 2);
	const LinExpr e(Var::eps), sig(Var::sigma);
	ConstraintSystem sys({Var::a_inv, Var::b_inv, Var::lambda_inv, Var::q_inv, Var::r_inv, Var::p1_inv,
	                      Var::p2_inv, Var::p3_inv, Var::eps, Var::sigma});
	sys.add(eq(sig, LinExpr(-s) + e, "critical-choice:sigma=-s+eps"));
	sys.add(eq(Var::a_inv, s / 2, "critical-choice:1/a=s/2"));
	sys.add(eq(Var::b_inv, half - s, "critical-choice:1/b=1/2-s"));
	sys.add(eq(Var::lambda_inv, LinExpr(half) + e / 2, "critical-choice:1/lambda=1/2+eps/2"));
	sys.add(eq(Var::q_inv, half, "critical-choice:1/q=1/2"));
	sys.add(eq(Var::r_inv, s / 2, "critical-choice:1/r=s/2"));
	sys.add(eq(Var::p1_inv, LinExpr(half + s) - e / 2, "critical-choice:1/p1=1/2+s-eps/2"));
	sys.add(eq(Var::p3_inv, (1 + s) / 2, "critical-choice:1/p3=(1+s)/2"));
	sys.add(lt(0, e, "eps:0<eps"));
	sys.add(lt(e, s, "eps:eps<s"));
	critical_low_pairs(sys, 2, -sig / Rational(2));
	return sys;
}

inline ConstraintSystem critical_n2_high(const ProblemParams &p)
{
	const Rational &s = p.s, half(1, 2);
	const LinExpr e(Var::eps), sig(Var::sigma);
	ConstraintSystem sys({Var::a_inv, Var::b_inv, Var::lambda_inv, Var::q_inv, Var::r_inv, Var::p1_inv,
	                      Var::p2_inv, Var::p3_inv, Var::eps, Var::sigma});
	sys.add(eq(sig, LinExpr(s - 1) + 2 * e, "critical-choice:sigma=s-1+2eps"));
	sys.add(eq(Var::a_inv, LinExpr(half) - e / 2, "critical-choice:1/a=1/2-eps/2"));
	sys.add(eq(Var::b_inv, e / 2, "critical-choice:1/b=eps/2"));
	sys.add(eq(Var::lambda_inv, LinExpr(s / 2) + e, "critical-choice:1/lambda=s/2+eps"));
	sys.add(eq(Var::q_inv, LinExpr(s / 2) + e / 2, "critical-choice:1/q=s/2+eps/2"));
	sys.add(eq(Var::r_inv, LinExpr(half - s / 2) - e / 2, "critical-choice:1/r=1/2-eps/2-s/2"));
	sys.add(eq(Var::p1_inv, LinExpr(1) - e, "critical-choice:1/p1=1-eps"));
	sys.add(eq(Var::p3_inv, half + s / 2, "critical-choice:1/p3=1/2+s/2"));
	sys.add(lt(0, e, "eps:0<eps"));
	sys.add(lt(e, half - s / 2, "eps:eps<1/2-s/2"));
	critical_low_pairs(sys, 2, -sig / Rational(2));
	return sys;
}

inline ConstraintSystem critical_n3_mass(const ProblemParams &p)
{
	const Rational &s = p.s, half(1, 2);
	const LinExpr b(Var::b_inv), sig(Var::sigma);
	ConstraintSystem sys({Var::a_inv, Var::lambda_inv, Var::q_inv, Var::r_inv, Var::p1_inv, Var::p2_inv,
	                      Var::p3_inv, Var::b_inv, Var::sigma});
	sys.add(eq(sig, -s, "critical-choice:sigma=-s"));
	sys.add(eq(Var::a_inv, LinExpr(half) - b, "critical-choice:1/a=1/2-1/b"));
	sys.add(eq(Var::lambda_inv, LinExpr(1 - s / 2) - b / 2, "critical-choice:1/lambda=1-s/2-1/(2b)"));
	sys.add(eq(Var::q_inv, LinExpr(Rational(1, 4) + s / 2) + b, "critical-choice:1/q=1/4+s/2+1/b"));
	sys.add(eq(Var::r_inv, LinExpr(half - s / 3) - b, "critical-choice:1/r=1/2-1/b-s/3"));
	sys.add(eq(Var::p1_inv, half + 2 * s / 3, "critical-choice:1/p1=1/2+2s/3"));
	sys.add(eq(Var::p3_inv, half + s / 3, "critical-choice:1/p3=1/2+s/3"));
	sys.add(lt(Rational(1, 3) - s / 3, b, "b-window:1/3-s/3<1/b"));
	sys.add(lt(b, s, "b-window:1/b<s"));
	sys.add(lt(b, half - 2 * s / 3, "b-window:1/b<1/2-2s/3"));
	// L^1 embeds in the dual space of exponent 1 + sigma/3.
	critical_low_pairs(sys, 3, -sig / Rational(3));
	return sys;
}

inline ConstraintSystem critical_n3_energy(const ProblemParams &p)
{
	const Rational &s = p.s;
	ConstraintSystem sys({Var::gamma_inv, Var::rho_inv, Var::q_inv, Var::r_inv, Var::a_inv, Var::b_inv,
	                      Var::p1_inv, Var::p2_inv, Var::p3_inv, Var::sigma});
	sys.add(eq(Var::sigma, s - 1, "critical-choice:sigma=s-1"));
	sys.add(eq(Var::gamma_inv, Rational(1, 2), "critical-choice:gamma=2"));
	sys.add(eq(Var::rho_inv, Rational(1, 6), "critical-choice:rho=6"));
	sys.add(eq(Var::q_inv, Rational(1, 2), "critical-choice:q=2"));
	sys.add(eq(Var::r_inv, Rational(1, 6), "critical-choice:r=6"));
	sys.add(eq(Var::a_inv, Rational(1, 4), "critical-choice:a=4"));
	sys.add(eq(Var::b_inv, Rational(1, 3), "critical-choice:b=3"));
	sys.add(eq(Var::p1_inv, 1 - s / 3, "critical-choice:1/p1=1-s/3"));
	sys.add(eq(Var::p3_inv, Rational(2, 3), "critical-choice:1/p3=2/3"));
	PairSlot gr = slot(Var::gamma_inv, Var::rho_inv, "gamma,rho"), ab = slot(Var::a_inv, Var::b_inv, "a,b"),
	         qr = slot(Var::q_inv, Var::r_inv, "q,r");
	add_all(sys, acceptability_constraints(3, gr));
	add_all(sys, acceptability_constraints(3, ab));
	add_all(sys, acceptability_constraints(3, qr));
	add_all(sys, estimate_constraints(3, false, Mode::Sharp, gr, qr));
	add_all(sys, estimate_constraints(3, false, Mode::NonSharp, ab, qr));
	add_all(sys, bilinear_hypotheses(3, LinExpr(Var::rho_inv), LinExpr(Var::r_inv), false));
	return sys;
}

inline ConstraintSystem critical_high_dim(const ProblemParams &p)
{
	const int n = p.n;
	const Rational N(n), half(1, 2), &s = p.s;
	const LinExpr sig(Var::sigma), b(Var::b_inv), rho(Var::rho_inv);
	ConstraintSystem sys({Var::gamma_inv, Var::a_inv, Var::lambda_inv, Var::rho_inv, Var::p1_inv, Var::p2_inv,
	                      Var::p3_inv, Var::b_inv, Var::sigma});
	// Space exponent of the bounding pair: 2n/(n - 2 sigma - 4 + 2s).
	LinExpr lam_space = (LinExpr(N - 4 + 2 * s) - 2 * sig) / (2 * N);
	sys.add(eq(rho, sig / N + half - s / N, "choice:1/rho"));
	sys.add(eq(Var::p1_inv, (LinExpr(2) - sig) / N, "choice:1/p1=(2-sigma)/n"));
	sys.add(eq(Var::p3_inv, Rational(2) / N, "choice:1/p3=2/n"));

	PairSlot gr = slot(Var::gamma_inv, Var::rho_inv, "gamma,rho"), ab = slot(Var::a_inv, Var::b_inv, "a,b");
	PairSlot lp{LinExpr(Var::lambda_inv), lam_space, "lambda,."};
	add_all(sys, acceptability_constraints(n, gr));
	add_all(sys, acceptability_constraints(n, ab));
	add_all(sys, acceptability_constraints(n, lp));
	add_all(sys, estimate_constraints(n, false, Mode::NonSharp, ab, lp));
	add_all(sys, estimate_constraints(n, false, Mode::Sharp, gr, lp));
	add_all(sys, bilinear_hypotheses(n, rho, lam_space, false));

	sys.add(lt((2 * sig + LinExpr(N - 2 * s)) / (2 * N), b, "b-window:(2sigma+n-2s)/(2n)<1/b"));
	sys.add(lt(b, half, "b-window:1/b<1/2"));
	sys.add(le((N - 2) * lam_space / N, b, "b-window:(n-2)(n-2sigma-4+2s)/(2n^2)<=1/b"));
	sys.add(le(b, N * lam_space / (N - 2), "b-window:1/b<=(n-2sigma-4+2s)/(2(n-2))"));

	if (p.alpha >= 1)
		sys.add(le(LinExpr(-s), sig, "sigma-window:-s<=sigma"));
	else
		sys.add(lt(LinExpr(-4 * s / (N - 2 * s)), sig, "sigma-window:-4s/(n-2s)<sigma"));
	sys.add(lt(sig, 0, "sigma-window:sigma<0"));
	sys.add(lt(LinExpr(s - (3 * N - 4) / (2 * (N - 1))), sig, "sigma-window:s-(3n-4)/(2(n-1))<sigma"));
	sys.add(lt(sig, LinExpr(s - N / (2 * (N - 1))), "sigma-window:sigma<s-n/(2(n-1))"));
	return sys;
}

} // namespace detail

/* The scenario's exponent conditions at p. Guards are enforced unless
 * policy is skip, which is meant for diagnostics outside the proof's range. */
inline ConstraintSystem build_scenario(ScenarioId id, const ProblemParams &p, GuardPolicy policy = GuardPolicy::enforce)
{
	p.validate();
	if (policy == GuardPolicy::enforce)
		if (auto g = failed_guard(id, p))
			throw scenario_not_applicable(id, *g);
	switch (id) {
	case ScenarioId::SubcriticalUsual: return detail::subcritical_system(p, false, false);
	case ScenarioId::SubcriticalBetter: return detail::subcritical_system(p, true, false);
	case ScenarioId::HolderUsual: return detail::subcritical_system(p, false, true);
	case ScenarioId::HolderBetter: return detail::subcritical_system(p, true, true);
	case ScenarioId::CriticalN2Low:
		if (p.n != 2)
			throw scenario_not_applicable(id, "n = 2");
		return detail::critical_n2_low(p);
	case ScenarioId::CriticalN2High:
		if (p.n != 2)
			throw scenario_not_applicable(id, "n = 2");
		return detail::critical_n2_high(p);
	case ScenarioId::CriticalN3Mass:
		if (p.n != 3)
			throw scenario_not_applicable(id, "n = 3");
		return detail::critical_n3_mass(p);
	case ScenarioId::CriticalN3Energy:
		if (p.n != 3)
			throw scenario_not_applicable(id, "n = 3");
		return detail::critical_n3_energy(p);
	default:
		if (p.n < 4)
			throw scenario_not_applicable(id, "n >= 4");
		return detail::critical_high_dim(p);
	}
}

/* Label family: the text before the first ':' or '('. */
inline std::string label_family(std::string_view label)
{
	auto k = label.find_first_of(":(");
	return std::string(label.substr(0, k));
}

inline const std::vector<std::string> &known_label_families()
{
	static const std::vector<std::string> f = {
		"choice", "acceptable", "admissible", "besov", "bilinear", "embedding", "holder-chain-rule",
		"boundedness", "critical-choice", "eps", "b-window", "sigma-window",
	};
	return f;
}

/* Labels of s that are empty or outside the known families. */
inline std::vector<std::string> unlabeled_constraints(const ConstraintSystem &s)
{
	std::vector<std::string> out;
	const auto &fam = known_label_families();
	for (const auto &c : s.constraints())
		if (c.label.empty() || c.label.find(':') == std::string::npos ||
		    std::find(fam.begin(), fam.end(), label_family(c.label)) == fam.end())
			out.push_back(c.label.empty() ? c.str() : c.label);
	return out;
}

/* The closed-form sigma window stated alongside each scenario. */
inline IntervalSet closed_form_sigma_window(ScenarioId id, const ProblemParams &p)
{
	if (auto g = failed_guard(id, p))
		throw scenario_not_applicable(id, *g);
	const Rational N(p.n), half(1, 2), &s = p.s, &a = p.alpha;
	const Rational d = N - 2 * s, m = N / (2 * (N - 1));
	auto closed_open = [](Bound lo, Bound hi) { return IntervalSet::make(std::move(lo), std::move(hi)); };
	switch (id) {
	case ScenarioId::SubcriticalUsual: {
		auto w1 = IntervalSet::closed(max(-s, s - m - (N - 2) * d * a / (4 * (N - 1))), s + m - N * d * a / (4 * (N - 1)));
		Rational lo = max(max(s - half - d * a / 4, s - d * a / 2), s - N / 2);
		auto w2 = IntervalSet::open(lo, min(Rational(0), s + half - d * a / 4));
		return intersect(w1, w2);
	}
	case ScenarioId::SubcriticalBetter: {
		Rational c = (3 * N - 4) / (2 * N - 2);
		return closed_open(Bound::closed(max(-s, s + c - (3 * N - 4) * d * a / (4 * N - 4))),
		                   Bound::open(min(Rational(0), s + c - d * a / 2)));
	}
	case ScenarioId::HolderUsual: {
		auto w1 = IntervalSet::open(max(max(s - d * a / 2, s - N / 2), -a * s), 0);
		auto w2 = IntervalSet::closed(s - m - (N - 2) * d * a / (4 * (N - 1)), s + m - N * d * a / (4 * (N - 1)));
		return intersect(w1, w2);
	}
	case ScenarioId::HolderBetter: {
		auto w1 = IntervalSet::open(max(s + 2 - d * a, -a * s), s + 2 - d * a / 2 - m);
		auto w2 = IntervalSet::open(s + 2 - m - (3 * N / 4 - 1) / (N - 1) * d * a, 0);
		return intersect(w1, w2);
	}
	case ScenarioId::CriticalN2Low: return IntervalSet::open(-s, 0);
	case ScenarioId::CriticalN2High: return IntervalSet::open(s - 1, 0);
	case ScenarioId::CriticalN3Mass:
		if (Rational(1, 3) - s / 3 < min(s, half - 2 * s / 3))
			return IntervalSet::point(-s);
		return {};
	case ScenarioId::CriticalN3Energy: return IntervalSet::point(s - 1);
	default: {
		auto shifted = IntervalSet::open(s - (3 * N - 4) / (2 * (N - 1)), s - m);
		auto base = a >= 1 ? IntervalSet::closed_open(-s, 0) : IntervalSet::open(-4 * s / d, 0);
		return intersect(base, shifted);
	}
	}
}

struct WindowDifference {
	std::string where;   // "lower", "upper" or "shape"
	std::string engine;
	std::string closed_form;
	bool strictness_only = false;
};

struct SigmaWindow {
	IntervalSet engine;
	IntervalSet closed_form;
	std::vector<WindowDifference> differences;
	bool agree() const { return differences.empty(); }
};

inline std::string bound_text(const Bound &b, bool lower)
{
	if (!b.value.is_finite())
		return lower ? "(-inf" : "+inf)";
	if (lower)
		return (b.is_closed() ? "[" : "(") + b.value.str();
	return b.value.str() + (b.is_closed() ? "]" : ")");
}

inline std::string set_text(const IntervalSet &s)
{
	if (s.empty())
		return "{}";
	std::string out;
	for (const auto &iv : s.intervals()) {
		if (!out.empty())
			out += " u ";
		out += bound_text(iv.lo, true) + ", " + bound_text(iv.hi, false);
	}
	return out;
}

inline std::vector<WindowDifference> window_differences(const IntervalSet &engine, const IntervalSet &closed_form)
{
	std::vector<WindowDifference> out;
	if (engine == closed_form)
		return out;
	if (engine.size() != 1 || closed_form.size() != 1) {
		out.push_back({"shape", set_text(engine), set_text(closed_form), false});
		return out;
	}
	const Interval &e = engine.intervals()[0], &q = closed_form.intervals()[0];
	if (e.lo != q.lo)
		out.push_back({"lower", bound_text(e.lo, true), bound_text(q.lo, true), e.lo.value == q.lo.value});
	if (e.hi != q.hi)
		out.push_back({"upper", bound_text(e.hi, false), bound_text(q.hi, false), e.hi.value == q.hi.value});
	return out;
}

/* Engine projection of the scenario onto sigma next to the closed form. */
inline SigmaWindow sigma_window(ScenarioId id, const ProblemParams &p)
{
	SigmaWindow w;
	w.engine = project_interval(build_scenario(id, p), Var::sigma);
	w.closed_form = closed_form_sigma_window(id, p);
	w.differences = window_differences(w.engine, w.closed_form);
	return w;
}

/* The explicit exponent choices of the critical constructions, as an
 * assignment; `free` is eps, or 1/b for the mass-critical n = 3 case, and
 * is ignored where nothing is left free. */
inline ExponentAssignment stated_assignment(ScenarioId id, const Rational &s, const Rational &free = 0)
{
	const Rational half(1, 2), &e = free;
	ExponentAssignment w;
	switch (id) {
	case ScenarioId::CriticalN2Low:
		w = {{Var::sigma, -s + e}, {Var::a_inv, s / 2}, {Var::b_inv, half - s}, {Var::lambda_inv, half + e / 2},
		     {Var::q_inv, half}, {Var::r_inv, s / 2}, {Var::p1_inv, half + s - e / 2}, {Var::p3_inv, (1 + s) / 2},
		     {Var::eps, e}};
		w[Var::p2_inv] = w[Var::r_inv] + w[Var::sigma] / 2;
		return w;
	case ScenarioId::CriticalN2High:
		w = {{Var::sigma, s - 1 + 2 * e}, {Var::a_inv, half - e / 2}, {Var::b_inv, e / 2}, {Var::lambda_inv, s / 2 + e},
		     {Var::q_inv, s / 2 + e / 2}, {Var::r_inv, half - e / 2 - s / 2}, {Var::p1_inv, 1 - e},
		     {Var::p3_inv, half + s / 2}, {Var::eps, e}};
		w[Var::p2_inv] = w[Var::r_inv] + w[Var::sigma] / 2;
		return w;
	case ScenarioId::CriticalN3Mass: {
		const Rational &b = free;
		w = {{Var::sigma, -s}, {Var::a_inv, half - b}, {Var::lambda_inv, 1 - s / 2 - b / 2},
		     {Var::q_inv, Rational(1, 4) + s / 2 + b}, {Var::r_inv, half - b - s / 3}, {Var::p1_inv, half + 2 * s / 3},
		     {Var::p3_inv, half + s / 3}, {Var::b_inv, b}};
		w[Var::p2_inv] = w[Var::r_inv] + w[Var::sigma] / 3;
		return w;
	}
	case ScenarioId::CriticalN3Energy:
		w = {{Var::sigma, s - 1}, {Var::gamma_inv, half}, {Var::rho_inv, Rational(1, 6)}, {Var::q_inv, half},
		     {Var::r_inv, Rational(1, 6)}, {Var::a_inv, Rational(1, 4)}, {Var::b_inv, Rational(1, 3)},
		     {Var::p1_inv, 1 - s / 3}, {Var::p3_inv, Rational(2, 3)}};
		w[Var::p2_inv] = w[Var::r_inv] + w[Var::sigma] / 3;
		return w;
	default:
		throw error("stated_assignment: " + std::string(to_string(id)) + " has no explicit assignment");
	}
}

/* Range of the free parameter of stated_assignment at s, as stated. */
inline IntervalSet stated_free_range(ScenarioId id, const Rational &s)
{
	const Rational half(1, 2);
	switch (id) {
	case ScenarioId::CriticalN2Low: return IntervalSet::open(0, s);
	case ScenarioId::CriticalN2High: return IntervalSet::open(0, half - s / 2);
	case ScenarioId::CriticalN3Mass: {
		Rational lo = Rational(1, 3) - s / 3, hi = min(s, half - 2 * s / 3);
		return lo < hi ? IntervalSet::open(lo, hi) : IntervalSet{};
	}
	case ScenarioId::CriticalN3Energy: return IntervalSet::point(0);
	default: throw error("stated_free_range: " + std::string(to_string(id)) + " has no explicit assignment");
	}
}

} // namespace uniq

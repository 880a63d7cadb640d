#pragma once

#include "audit/random_systems.hpp"
#include "audit/vertex_oracle.hpp"
#include "report.hpp"

#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace uniq {

struct Check {
	std::string name;
	bool passed = false;
	std::string detail;
	json data = nullptr;
};

struct SuiteResult {
	std::string name;
	std::vector<Check> checks;

	bool passed() const
	{
		for (const auto &c : checks)
			if (!c.passed)
				return false;
		return !checks.empty();
	}
	const Check *find(std::string_view prefix) const
	{
		for (const auto &c : checks)
			if (c.name.starts_with(prefix))
				return &c;
		return nullptr;
	}
	bool passed_prefix(std::string_view prefix) const
	{
		bool any = false;
		for (const auto &c : checks)
			if (c.name.starts_with(prefix)) {
				any = true;
				if (!c.passed)
					return false;
			}
		return any;
	}
};

inline json to_json(const SuiteResult &r)
{
	json checks = json::array();
	for (const auto &c : r.checks)
		checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}, {"data", c.data}});
	return {{"name", r.name}, {"passed", r.passed()}, {"checks", checks}};
}

inline std::string text_report(const SuiteResult &r)
{
	std::ostringstream os;
	os << "== " << r.name << ": " << (r.passed() ? "PASS" : "FAIL") << '\n';
	for (const auto &c : r.checks)
		os << "  [" << (c.passed ? "ok" : "FAIL") << "] " << c.name << (c.detail.empty() ? "" : ": " + c.detail) << '\n';
	return os.str();
}

/* ---- fm-oracle ---- */

inline SuiteResult fm_oracle_suite(std::size_t count = 500, std::uint64_t seed = 20240611)
{
	SuiteResult r{"fm-oracle", {}};
	std::mt19937_64 rng(seed);
	audit::RandomSystemSpec spec; // <= 4 vars, <= 10 constraints, coefficients in [-4, 4]
	std::size_t agree = 0, feasible = 0, witness_ok = 0, unpruned_agree = 0;
	json disagreements = json::array();
	for (std::size_t k = 0; k < count; ++k) {
		auto sys = audit::random_system(rng, spec);
		Verdict v = is_feasible(sys);
		bool oracle = audit::vertex_feasible(sys);
		bool plain = is_feasible(sys, {.prune_by_history = false}).feasible;
		agree += v.feasible == oracle;
		unpruned_agree += plain == oracle;
		if (v.feasible != oracle && disagreements.size() < 5)
			disagreements.push_back({{"index", k}, {"fm", v.feasible}, {"oracle", oracle}});
		if (v.feasible) {
			++feasible;
			witness_ok += check_assignment(sys, v.witness).empty();
		}
	}
	r.checks.push_back({"verdicts match the vertex oracle", agree == count,
	                    std::to_string(agree) + "/" + std::to_string(count) + " agree, " + std::to_string(feasible) + " feasible",
	                    {{"seed", seed}, {"count", count}, {"disagreements", disagreements}}});
	r.checks.push_back({"verdicts without history pruning match", unpruned_agree == count,
	                    std::to_string(unpruned_agree) + "/" + std::to_string(count)});
	r.checks.push_back({"witnesses satisfy every constraint exactly", witness_ok == feasible,
	                    std::to_string(witness_ok) + "/" + std::to_string(feasible)});
	return r;
}

/* ---- sigma-windows ---- */

/* Samples lo + j(hi - lo)/8, j = 0..7, of the Thm11 alpha window at (n, s);
 * empty when the window is. */
inline std::vector<Rational> theorem_window_samples(int n, const Rational &s)
{
	const Rational N(n), d = N - 2 * s;
	Rational lo = max(Rational(1), 2 * s / d);
	Rational hi = min(min(Rational(4) / d, (N + 2 * s) / d), (4 * s + 4 - N / (N - 1)) / d);
	std::vector<Rational> out;
	if (!(lo < hi))
		return out;
	for (int j = 0; j < 8; ++j)
		out.push_back(lo + (hi - lo) * Rational(j, 8));
	return out;
}

/* Endpoint-strictness differences tolerated between the projection and
 * the closed form. None are currently known on the sampled points. */
inline const std::vector<ProblemParams> &known_strictness_differences()
{
	static const std::vector<ProblemParams> v;
	return v;
}

inline SuiteResult sigma_windows_suite()
{
	SuiteResult r{"sigma-windows", {}};
	{
		ProblemParams p{3, Rational(1, 2), Rational(3, 2)};
		auto w = sigma_window(ScenarioId::SubcriticalUsual, p);
		bool ok = w.engine == IntervalSet::closed_open(Rational(-1, 2), 0);
		r.checks.push_back({"subcritical-usual at " + p.str() + " is [-1/2, 0)", ok, set_text(w.engine)});
	}
	std::size_t total = 0, differ = 0;
	json samples = json::array(), empty = json::array();
	bool ok = true;
	for (int n : {3, 4, 5})
		for (int k = 1; k <= 7; ++k) {
			Rational s(k, 8);
			auto as = theorem_window_samples(n, s);
			if (as.empty())
				empty.push_back({{"n", n}, {"s", s.str()}});
			for (const auto &a : as) {
				ProblemParams p{n, s, a};
				auto w = sigma_window(ScenarioId::SubcriticalUsual, p);
				++total;
				if (w.agree())
					continue;
				++differ;
				const auto &allowed = known_strictness_differences();
				bool listed = std::find(allowed.begin(), allowed.end(), p) != allowed.end();
				bool strict_only = std::all_of(w.differences.begin(), w.differences.end(),
				                               [](const WindowDifference &d) { return d.strictness_only; });
				ok = ok && listed && strict_only;
				samples.push_back({{"params", params_json(p)}, {"engine", set_text(w.engine)}, {"closed_form", set_text(w.closed_form)}});
			}
		}
	r.checks.push_back({"subcritical-usual projection equals the closed-form window", ok,
	                    std::to_string(total) + " samples, " + std::to_string(differ) + " differ",
	                    {{"samples", total}, {"differences", samples}, {"empty_theorem_windows", empty}}});
	return r;
}

/* ---- thresholds ---- */

inline Status critical_status(ScenarioId id, int n, const Rational &s)
{
	return evaluate_atom(id, {n, s, energy_critical(n, s)});
}

inline SuiteResult thresholds_suite()
{
	SuiteResult r{"thresholds", {}};
	const Rational eps = Rational(1) / Rational::parse("1099511627776"); // 2^-40
	const Rational tol = Rational(1, 1000000000);

	auto exact = [&](ScenarioId id, int n, const Rational &t, const Rational &lo, const Rational &hi) {
		Status at = critical_status(id, n, t), above = critical_status(id, n, t + eps), below = critical_status(id, n, t - eps);
		auto br = boundary_trace_s(n, Target{{id}, {}}, Curve::energy, lo, hi, tol);
		bool one = br.size() == 1 && br[0].contains(t);
		bool ok = at != Status::T && above == Status::T && below != Status::T && one;
		std::string d = "status at " + t.str() + ": " + to_string(at) + ", just above: " + to_string(above) +
		                ", just below: " + to_string(below) + "; traced brackets: " + std::to_string(br.size());
		if (!br.empty())
			d += " first [" + br[0].lo.decimal(12) + ", " + br[0].hi.decimal(12) + "]";
		r.checks.push_back({std::string(to_string(id)) + " threshold for n=" + std::to_string(n) + " is exactly " + t.str(), ok, d});
	};
	exact(ScenarioId::CriticalN3Energy, 3, Rational(1, 2), Rational(1, 64), Rational(63, 64));
	exact(ScenarioId::CriticalHighDim, 4, Rational(1, 3), Rational(1, 64), Rational(63, 64));

	for (int n : {5, 6}) {
		auto e = s0(n, tol);
		auto br = boundary_trace_s(n, Target{{ScenarioId::CriticalHighDim}, {}}, Curve::energy, Rational(1, 64), Rational(63, 64), tol);
		bool ok = br.size() == 1 && br[0].lo <= e.upper && e.lower <= br[0].hi && br[0].at_lo != Status::T &&
		          br[0].at_hi == Status::T;
		std::string d = "s0 in [" + e.lower.decimal(12) + ", " + e.upper.decimal(12) + "]";
		if (!br.empty())
			d += ", feasibility switches in [" + br[0].lo.decimal(12) + ", " + br[0].hi.decimal(12) + "]";
		r.checks.push_back({"critical-high-dim threshold for n=" + std::to_string(n) + " meets the s0 enclosure", ok, d});
	}

	{
		auto e = s0(5, tol);
		int pl = s0_polynomial(5, e.lower).sign(), pu = s0_polynomial(5, e.upper).sign();
		std::vector<std::string> inside;
		for (long q = 1; q <= 1000; ++q) {
			Rational Q(q);
			Rational p = Rational::from_mpq(mpq_class((e.lower * Q).floor() + 1));
			Rational x = p / Q;
			if (x < e.upper)
				inside.push_back(x.str());
		}
		Rational approx = Rational::parse("0.325556");
		bool near = (e.lower - approx).abs() < Rational(1, 100000);
		bool ok = pl > 0 && pu < 0 && inside.empty() && near && e.upper - e.lower <= tol;
		r.checks.push_back({"s0(5) enclosure certified at tol 1e-9", ok,
		                    "[" + e.lower.decimal(12) + ", " + e.upper.decimal(12) + "], P signs " + std::to_string(pl) + "/" +
		                        std::to_string(pu) + ", small-denominator rationals inside: " + std::to_string(inside.size()),
		                    {{"lower", e.lower.str()}, {"upper", e.upper.str()}, {"inside", inside}}});
	}
	return r;
}

/* ---- coverage ---- */

/* Per-atom account of a target's value at p: certificates of infeasible
 * scenarios, guards of inapplicable ones. */
inline std::string explain(const Target &t, const ProblemParams &p)
{
	std::string out;
	for (const auto &a : t.atoms) {
		if (!out.empty())
			out += "; ";
		out += std::string(atom_name(a)) + "=";
		Status s = evaluate_atom(a, p);
		out += to_string(s);
		if (const auto *id = std::get_if<ScenarioId>(&a)) {
			if (s == Status::NA) {
				if (auto g = failed_guard(*id, p))
					out += " (guard " + *g + ")";
			} else if (s == Status::F) {
				auto v = is_feasible(build_scenario(*id, p));
				out += " (";
				for (std::size_t k = 0; k < v.certificate.size(); ++k)
					out += (k ? ", " : "") + v.certificate[k];
				out += ")";
			}
		}
	}
	return out;
}

inline json mismatch_json(const MismatchReport &rep, const RegionGrid &g, bool with_explanations)
{
	json items = json::array();
	const Target &ta = g.targets()[g.target_index(rep.a)], &tb = g.targets()[g.target_index(rep.b)];
	for (const auto &m : rep.items) {
		json j = {{"s", m.s.str()},
		          {"alpha", m.alpha.str()},
		          {"a", to_string(m.a)},
		          {"b", to_string(m.b)},
		          {"distance", m.distance ? json(m.distance->str()) : json(nullptr)},
		          {"boundary_adjacent", m.boundary_adjacent}};
		if (with_explanations) {
			ProblemParams p{g.spec().n, m.s, m.alpha};
			j["a_detail"] = explain(ta, p);
			j["b_detail"] = explain(tb, p);
		}
		items.push_back(std::move(j));
	}
	return items;
}

inline SuiteResult coverage_suite(const Rational &step = Rational(1, 32), unsigned threads = scan_threads())
{
	SuiteResult r{"coverage", {}};
	const std::string covered = "thm11|thm12";
	const std::vector<std::string> subsets = {"rogers", "furioli-terraneo", "win-tsutsumi-sub&alpha<4/(n-2s)",
	                                          "kato&alpha>2s/(n-2s)"};
	const std::vector<std::pair<std::string, std::string>> equal = {
		{"subcritical-usual|subcritical-better", "thm11"}, {"holder-usual|holder-better", "thm12"}};
	for (int n : {3, 4, 5}) {
		std::vector<std::string> names = {covered, "open-sub", "thm11", "thm12"};
		names.insert(names.end(), subsets.begin(), subsets.end());
		for (const auto &[a, b] : equal)
			names.push_back(a);
		RegionGrid g = scan(audit_grid(n, step), parse_targets(names), threads);
		const std::string grid = "n=" + std::to_string(n) + ", step " + step.str();
		for (const auto &a : subsets) {
			auto rep = compare(g, a, covered, CompareMode::subset);
			r.checks.push_back({"subset: " + a + " in " + covered + " (" + grid + ")", rep.empty(),
			                    std::to_string(rep.items.size()) + " violating cells", mismatch_json(rep, g, false)});
		}
		{
			auto ko = g.target_index("open-sub"), kc = g.target_index(covered);
			std::size_t overlap = 0;
			for (std::size_t i = 0; i < g.s_points().size(); ++i)
				for (std::size_t j = 0; j < g.alpha_points().size(); ++j)
					overlap += g.at(i, j, ko) == Status::T && g.at(i, j, kc) == Status::T;
			r.checks.push_back({"disjoint: open-sub and " + covered + " (" + grid + ")", overlap == 0,
			                    std::to_string(overlap) + " overlapping cells"});
		}
		for (const auto &[a, b] : equal) {
			auto rep = compare(g, a, b, CompareMode::equality);
			r.checks.push_back({"equivalence: " + a + " vs " + b + " (" + grid + ")", rep.interior() == 0,
			                    std::to_string(rep.items.size()) + " boundary-adjacent, " + std::to_string(rep.interior()) +
			                        " interior",
			                    mismatch_json(rep, g, true)});
		}
	}
	return r;
}

/* ---- chains ---- */

inline json chain_json(const ChainReport &rep)
{
	json samples = json::array();
	for (const auto &x : rep.samples) {
		json steps = json::array();
		for (const auto &st : x.steps)
			steps.push_back(st.holds ? "holds" : st.masked ? "masked" : "fails");
		samples.push_back({{"s", x.s.str()},
		                   {"terms", {x.terms[0].str(), x.terms[1].str(), x.terms[2].str()}},
		                   {"cap", x.cap.str()},
		                   {"steps", steps}});
	}
	return {{"kind", std::string(to_string(rep.kind))}, {"n", rep.n}, {"failures", rep.failures()},
	        {"passed", rep.passed()}, {"samples", samples}};
}

inline SuiteResult chains_suite()
{
	SuiteResult r{"chains", {}};
	{
		auto rep = verify_chain(ChainKind::BetterRegularity, 3, {Rational(1, 2)});
		const auto &x = rep.samples[0];
		bool ok = x.steps[0].holds && !x.steps[1].holds && x.steps[1].masked && x.terms[1] == ExtRational(Rational(7, 3)) &&
		          x.terms[2] == ExtRational(Rational(9, 4)) && x.cap == 2;
		r.checks.push_back({"better-regularity counterexample at n=3, s=1/2 is masked", ok,
		                    "t1 = " + x.terms[1].str() + " >= t2 = " + x.terms[2].str() + ", cap " + x.cap.str(),
		                    chain_json(rep)});
	}
	for (int n : {3, 4, 5}) {
		auto rep = verify_chain(ChainKind::BetterRegularity, n, chain_samples());
		Rational bound(n, 4 * (n - 1));
		bool below_ok = true;
		for (const auto &x : rep.samples)
			if (x.s < bound)
				below_ok = below_ok && x.steps[0].holds && x.steps[1].holds;
		r.checks.push_back({"better-regularity chain n=" + std::to_string(n), rep.passed() && below_ok,
		                    std::to_string(rep.failures()) + " failures, all masked: " + (rep.passed() ? "yes" : "no") +
		                        "; holds below s = " + bound.str() + ": " + (below_ok ? "yes" : "no"),
		                    chain_json(rep)});
	}
	for (int n : {3, 4, 5, 6}) {
		auto rep = verify_chain(ChainKind::HolderBetter, n, chain_samples());
		r.checks.push_back({"holder-better chain n=" + std::to_string(n), rep.passed(),
		                    std::to_string(rep.failures()) + " failures, all masked: " + (rep.passed() ? "yes" : "no"),
		                    chain_json(rep)});
	}
	return r;
}

/* ---- witnesses ---- */

/* Ten points of the s-range of each explicit critical construction. */
inline std::vector<Rational> witness_samples(ScenarioId id)
{
	std::vector<Rational> out;
	for (int k = 1; k <= 10; ++k)
		switch (id) {
		case ScenarioId::CriticalN2Low: out.emplace_back(k, 22); break;
		case ScenarioId::CriticalN2High: out.push_back(Rational(1, 2) + Rational(k - 1, 20)); break;
		case ScenarioId::CriticalN3Mass: out.push_back(Rational(1, 4) + Rational(k, 44)); break;
		default: out.push_back(Rational(1, 2) + Rational(k, 22)); break;
		}
	return out;
}

inline SuiteResult witnesses_suite()
{
	SuiteResult r{"witnesses", {}};
	for (ScenarioId id : {ScenarioId::CriticalN2Low, ScenarioId::CriticalN2High, ScenarioId::CriticalN3Mass,
	                      ScenarioId::CriticalN3Energy}) {
		const int n = id <= ScenarioId::CriticalN2High ? 2 : 3;
		std::size_t clean = 0, samples = 0;
		json bad = json::array();
		for (const auto &s : witness_samples(id)) {
			++samples;
			Rational a = id == ScenarioId::CriticalN3Energy ? energy_critical(n, s) : distributional_critical(n, s);
			ProblemParams p{n, s, a};
			auto range = stated_free_range(id, s);
			if (range.empty()) {
				bad.push_back({{"s", s.str()}, {"violated", {"empty parameter range"}}});
				continue;
			}
			const Interval &iv = range.intervals()[0];
			Rational free = (iv.lo.value.value() + iv.hi.value.value()) / 2;
			auto v = check_assignment(build_scenario(id, p), stated_assignment(id, s, free));
			if (v.empty()) {
				++clean;
				continue;
			}
			json labels = json::array();
			for (const auto &x : v)
				labels.push_back(x.label);
			bad.push_back({{"s", s.str()}, {"violated", labels}});
		}
		r.checks.push_back({"stated assignment for " + std::string(to_string(id)), clean == samples,
		                    std::to_string(clean) + "/" + std::to_string(samples) + " samples with zero violations",
		                    {{"failures", bad}}});
	}
	// engine witnesses on a spread of subcritical and critical points
	std::size_t feasible = 0, ok = 0;
	for (ScenarioId id : all_scenarios)
		for (int n : {2, 3, 4, 5})
			for (int k = 1; k <= 7; ++k) {
				Rational s(k, 8);
				for (const Rational &a : {Rational(1, 2), Rational(3, 4), Rational(1), Rational(5, 4), Rational(3, 2),
				                          energy_critical(n, s), distributional_critical(n, s)}) {
					ProblemParams p{n, s, a};
					if (s >= Rational(n, 2) || !applicable(id, p))
						continue;
					ConstraintSystem sys;
					try {
						sys = build_scenario(id, p);
					} catch (const scenario_not_applicable &) {
						continue;
					}
					Verdict v = is_feasible(sys);
					if (!v.feasible)
						continue;
					++feasible;
					ok += check_assignment(sys, v.witness).empty();
				}
			}
	r.checks.push_back({"engine witnesses pass every scenario constraint", ok == feasible && feasible > 0,
	                    std::to_string(ok) + "/" + std::to_string(feasible)});
	return r;
}

/* ---- dispatch ---- */

inline const std::vector<std::string> &suite_names()
{
	static const std::vector<std::string> v = {"fm-oracle", "witnesses", "sigma-windows", "coverage", "chains", "thresholds"};
	return v;
}

inline std::vector<SuiteResult> run_suite(const std::string &name)
{
	if (name == "all") {
		std::vector<SuiteResult> out;
		for (const auto &s : suite_names())
			out.push_back(run_suite(s).front());
		return out;
	}
	if (name == "fm-oracle")
		return {fm_oracle_suite()};
	if (name == "witnesses")
		return {witnesses_suite()};
	if (name == "sigma-windows")
		return {sigma_windows_suite()};
	if (name == "coverage")
		return {coverage_suite()};
	if (name == "chains")
		return {chains_suite()};
	if (name == "thresholds")
		return {thresholds_suite()};
	throw parse_error("unknown suite '" + name + "'");
}

inline json verify_json(const std::string &name, const std::vector<SuiteResult> &results)
{
	json suites = json::array();
	bool ok = !results.empty();
	for (const auto &r : results) {
		suites.push_back(to_json(r));
		ok = ok && r.passed();
	}
	return {{"kind", "verify"}, {"tool", "uniq"}, {"version", tool_version()}, {"suite", name}, {"passed", ok}, {"suites", suites}};
}

} // namespace uniq

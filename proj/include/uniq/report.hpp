#pragma once

#include "regions.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#ifndef UNIQ_VERSION
#define UNIQ_VERSION "1.0.0"
#endif

namespace uniq {

using nlohmann::json;

inline const char *tool_version() { return UNIQ_VERSION; }

/* ---- interval sets ---- */

inline json bound_json(const Bound &b) { return json::array({b.value.str(), to_string(b.closedness)}); }

inline Bound bound_from_json(const json &j)
{
	const std::string v = j.at(0).get<std::string>(), c = j.at(1).get<std::string>();
	Closedness cl = c == "closed" ? Closedness::closed : Closedness::open;
	if (c != "closed" && c != "open")
		throw parse_error("bad closedness '" + c + "'");
	if (v == "-inf")
		return Bound::neg_inf();
	if (v == "+inf")
		return Bound::pos_inf();
	return {ExtRational(Rational::parse(v)), cl};
}

inline json interval_json(const Interval &i) { return json::array({bound_json(i.lo), bound_json(i.hi)}); }

/* List of intervals, each [[lo, closedness], [hi, closedness]]. */
inline json to_json(const IntervalSet &s)
{
	json out = json::array();
	for (const auto &i : s.intervals())
		out.push_back(interval_json(i));
	return out;
}

inline IntervalSet interval_set_from_json(const json &j)
{
	std::vector<Interval> out;
	for (const auto &i : j)
		out.push_back({bound_from_json(i.at(0)), bound_from_json(i.at(1))});
	return IntervalSet(std::move(out));
}

inline json params_json(const ProblemParams &p) { return {{"n", p.n}, {"s", p.s.str()}, {"alpha", p.alpha.str()}}; }

inline ProblemParams params_from_json(const json &j)
{
	return {j.at("n").get<int>(), Rational::parse(j.at("s").get<std::string>()),
	        Rational::parse(j.at("alpha").get<std::string>())};
}

/* ---- verdicts ---- */

struct VerdictDocument {
	ProblemParams params;
	std::string target;                      // scenario or predicate id, or "auto"
	std::string target_kind = "scenario";    // scenario | predicate | auto
	bool applicable = true;
	std::optional<std::string> guard;        // the failing guard when not applicable
	bool feasible = false;
	std::optional<Interval> sigma_interval;  // scenarios only, when feasible
	std::optional<ExponentAssignment> witness;
	std::vector<std::string> violated;
	std::vector<VerdictDocument> details;    // per scenario, for "auto"
	std::optional<std::string> tolerance;

	friend bool operator==(const VerdictDocument &, const VerdictDocument &) = default;
};

inline json to_json(const VerdictDocument &d)
{
	json j;
	j["kind"] = "verdict";
	j["tool"] = "uniq";
	j["version"] = tool_version();
	j["params"] = params_json(d.params);
	j["target"] = d.target;
	j["target_kind"] = d.target_kind;
	j["applicable"] = d.applicable;
	j["guard"] = d.guard ? json(*d.guard) : json(nullptr);
	j["feasible"] = d.feasible;
	j["sigma_interval"] = d.sigma_interval ? interval_json(*d.sigma_interval) : json(nullptr);
	if (d.witness) {
		json w = json::object();
		for (const auto &[v, x] : *d.witness)
			w[std::string(name(v))] = x.str();
		j["witness"] = w;
	} else {
		j["witness"] = nullptr;
	}
	j["violated"] = d.violated;
	j["details"] = json::array();
	for (const auto &x : d.details)
		j["details"].push_back(to_json(x));
	j["metadata"] = {{"tolerance", d.tolerance ? json(*d.tolerance) : json(nullptr)}, {"grid", nullptr}};
	return j;
}

inline VerdictDocument verdict_from_json(const json &j)
{
	VerdictDocument d;
	d.params = params_from_json(j.at("params"));
	d.target = j.at("target").get<std::string>();
	d.target_kind = j.at("target_kind").get<std::string>();
	d.applicable = j.at("applicable").get<bool>();
	if (!j.at("guard").is_null())
		d.guard = j.at("guard").get<std::string>();
	d.feasible = j.at("feasible").get<bool>();
	if (!j.at("sigma_interval").is_null())
		d.sigma_interval = Interval{bound_from_json(j["sigma_interval"].at(0)), bound_from_json(j["sigma_interval"].at(1))};
	if (!j.at("witness").is_null()) {
		ExponentAssignment w;
		for (const auto &[k, v] : j["witness"].items())
			w[parse_var(k)] = Rational::parse(v.get<std::string>());
		d.witness = std::move(w);
	}
	d.violated = j.at("violated").get<std::vector<std::string>>();
	for (const auto &x : j.at("details"))
		d.details.push_back(verdict_from_json(x));
	const auto &m = j.at("metadata");
	if (!m.at("tolerance").is_null())
		d.tolerance = m["tolerance"].get<std::string>();
	return d;
}

/* Feasibility of one scenario at p. Guard failures yield an inapplicable,
 * infeasible document rather than an exception. */
inline VerdictDocument check_scenario(ScenarioId id, const ProblemParams &p)
{
	p.validate();
	VerdictDocument d;
	d.params = p;
	d.target = std::string(to_string(id));
	if (auto g = failed_guard(id, p)) {
		d.applicable = false;
		d.guard = *g;
		return d;
	}
	auto sys = build_scenario(id, p);
	Verdict v = is_feasible(sys);
	d.feasible = v.feasible;
	if (v.feasible) {
		auto w = project_interval(sys, Var::sigma);
		if (w.size() == 1)
			d.sigma_interval = w.intervals()[0];
		d.witness = std::move(v.witness);
	} else {
		d.violated = std::move(v.certificate);
	}
	return d;
}

inline VerdictDocument check_predicate(PredicateId id, const ProblemParams &p)
{
	p.validate();
	VerdictDocument d;
	d.params = p;
	d.target = std::string(to_string(id));
	d.target_kind = "predicate";
	d.feasible = predicate_exact(id, p);
	return d;
}

/* Every scenario whose guard holds; the verdict is their union. */
inline VerdictDocument check_auto(const ProblemParams &p)
{
	p.validate();
	VerdictDocument d;
	d.params = p;
	d.target = "auto";
	d.target_kind = "auto";
	d.applicable = false;
	for (ScenarioId id : all_scenarios) {
		if (!applicable(id, p))
			continue;
		auto x = check_scenario(id, p);
		d.applicable = true;
		d.feasible = d.feasible || x.feasible;
		d.details.push_back(std::move(x));
	}
	if (!d.applicable)
		d.guard = "no scenario applies";
	return d;
}

/* ---- sigma windows ---- */

inline json sigma_json(ScenarioId id, const ProblemParams &p, const SigmaWindow &w)
{
	json diffs = json::array();
	for (const auto &x : w.differences)
		diffs.push_back({{"where", x.where}, {"engine", x.engine}, {"closed_form", x.closed_form}, {"strictness_only", x.strictness_only}});
	return {{"kind", "sigma"},
	        {"tool", "uniq"},
	        {"version", tool_version()},
	        {"params", params_json(p)},
	        {"scenario", std::string(to_string(id))},
	        {"engine", to_json(w.engine)},
	        {"closed_form", to_json(w.closed_form)},
	        {"agree", w.agree()},
	        {"differences", diffs}};
}

/* ---- s0 ---- */

inline json s0_json(int n, const Rational &tol, const S0Enclosure &e)
{
	return {{"kind", "s0"},
	        {"tool", "uniq"},
	        {"version", tool_version()},
	        {"n", n},
	        {"tol", tol.str()},
	        {"lower", e.lower.str()},
	        {"upper", e.upper.str()},
	        {"lower_decimal", e.lower.decimal(12)},
	        {"upper_decimal", e.upper.decimal(12)},
	        {"p_lower", s0_polynomial(n, e.lower).sign()},
	        {"p_upper", s0_polynomial(n, e.upper).sign()}};
}

} // namespace uniq

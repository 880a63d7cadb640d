#pragma once

#include "linear.hpp"

#include <json.hpp>

namespace uniq {

inline nlohmann::json to_json(const LinExpr &e)
{
	nlohmann::json terms = nlohmann::json::object();
	for (const auto &[v, a] : e.terms())
		terms[std::string(name(v))] = a.str();
	return {{"const", e.constant().str()}, {"terms", terms}};
}

inline LinExpr linexpr_from_json(const nlohmann::json &j)
{
	LinExpr e = Rational::parse(j.at("const").get<std::string>());
	for (const auto &[k, v] : j.at("terms").items())
		e += Rational::parse(v.get<std::string>()) * parse_var(k);
	return e;
}

inline nlohmann::json to_json(const ConstraintSystem &s)
{
	nlohmann::json vars = nlohmann::json::array(), cons = nlohmann::json::array();
	for (Var v : s.variables())
		vars.push_back(std::string(name(v)));
	for (const auto &c : s.constraints())
		cons.push_back({{"expr", to_json(c.expr)}, {"rel", std::string(to_string(c.rel))}, {"label", c.label}});
	return {{"variables", vars}, {"constraints", cons}};
}

inline ConstraintSystem system_from_json(const nlohmann::json &j)
{
	ConstraintSystem s;
	for (const auto &v : j.at("variables"))
		s.declare(parse_var(v.get<std::string>()));
	for (const auto &c : j.at("constraints"))
		s.add({linexpr_from_json(c.at("expr")), parse_rel(c.at("rel").get<std::string>()), c.at("label").get<std::string>()});
	return s;
}

} // namespace uniq

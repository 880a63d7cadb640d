#pragma once

#include "rational.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace uniq {

/* Exponent variables. Lebesgue and time exponents are carried by their
 * reciprocals so every relation between them is affine. */
enum class Var : std::uint8_t {
	sigma,
	gamma_inv,
	rho_inv,
	q_inv,
	r_inv,
	a_inv,
	b_inv,
	lambda_inv,
	p1_inv,
	p2_inv,
	p3_inv,
	l_inv,
	eps,
};

inline constexpr std::size_t var_count = 13;

inline constexpr std::array<std::string_view, var_count> var_names = {
	"sigma", "gamma_inv", "rho_inv", "q_inv", "r_inv", "a_inv", "b_inv",
	"lambda_inv", "p1_inv", "p2_inv", "p3_inv", "l_inv", "eps",
};

inline std::string_view name(Var v) { return var_names[static_cast<std::size_t>(v)]; }

inline Var parse_var(std::string_view s)
{
	for (std::size_t k = 0; k < var_count; ++k)
		if (var_names[k] == s)
			return static_cast<Var>(k);
	throw parse_error("unknown exponent variable '" + std::string(s) + "'");
}

using ExponentAssignment = std::map<Var, Rational>;

/* constant + sum coeff*var; zero coefficients are never stored and terms are
 * kept sorted by variable. */
class LinExpr {
	Rational c_;
	std::vector<std::pair<Var, Rational>> terms_;

	void set_term(Var v, Rational a)
	{
		auto it = std::lower_bound(terms_.begin(), terms_.end(), v,
		                           [](const auto &t, Var x) { return t.first < x; });
		if (it != terms_.end() && it->first == v) {
			if (a.is_zero())
				terms_.erase(it);
			else
				it->second = std::move(a);
		} else if (!a.is_zero()) {
			terms_.insert(it, {v, std::move(a)});
		}
	}

public:
	LinExpr() = default;
	LinExpr(Rational c) : c_(std::move(c)) {}
	LinExpr(int c) : c_(c) {}
	LinExpr(Var v) { terms_.emplace_back(v, Rational(1)); }

	const Rational &constant() const { return c_; }
	const std::vector<std::pair<Var, Rational>> &terms() const { return terms_; }
	bool is_constant() const { return terms_.empty(); }

	Rational coeff(Var v) const
	{
		for (const auto &[x, a] : terms_)
			if (x == v)
				return a;
		return 0;
	}

	LinExpr &operator+=(const LinExpr &o)
	{
		c_ += o.c_;
		for (const auto &[v, a] : o.terms_)
			set_term(v, coeff(v) + a);
		return *this;
	}
	LinExpr &operator-=(const LinExpr &o) { return *this += -o; }
	LinExpr &operator*=(const Rational &k)
	{
		if (k.is_zero()) {
			c_ = 0;
			terms_.clear();
			return *this;
		}
		c_ *= k;
		for (auto &t : terms_)
			t.second *= k;
		return *this;
	}

	LinExpr operator-() const
	{
		LinExpr e = *this;
		e *= Rational(-1);
		return e;
	}

	friend LinExpr operator+(LinExpr a, const LinExpr &b) { return a += b; }
	friend LinExpr operator-(LinExpr a, const LinExpr &b) { return a -= b; }
	friend LinExpr operator*(LinExpr a, const Rational &k) { return a *= k; }
	friend LinExpr operator*(const Rational &k, LinExpr a) { return a *= k; }
	friend LinExpr operator/(LinExpr a, const Rational &k) { return a *= Rational(1) / k; }

	friend bool operator==(const LinExpr &, const LinExpr &) = default;

	/* Replace v by e. */
	LinExpr substitute(Var v, const LinExpr &e) const
	{
		Rational a = coeff(v);
		if (a.is_zero())
			return *this;
		LinExpr out = *this;
		out.set_term(v, 0);
		out += e * a;
		return out;
	}

	/* Missing variables evaluate as an error; assignments must be total. */
	Rational evaluate(const ExponentAssignment &w) const
	{
		Rational r = c_;
		for (const auto &[v, a] : terms_) {
			auto it = w.find(v);
			if (it == w.end())
				throw error("assignment has no value for " + std::string(name(v)));
			r += a * it->second;
		}
		return r;
	}

	std::string str() const
	{
		std::string s;
		for (const auto &[v, a] : terms_) {
			Rational m = a.abs();
			if (s.empty())
				s += a.sign() < 0 ? "-" : "";
			else
				s += a.sign() < 0 ? " - " : " + ";
			if (m != 1)
				s += m.str() + "*";
			s += name(v);
		}
		if (s.empty())
			return c_.str();
		if (!c_.is_zero())
			s += (c_.sign() < 0 ? " - " : " + ") + c_.abs().str();
		return s;
	}
};

inline LinExpr operator+(Var a, const LinExpr &b) { return LinExpr(a) + b; }
inline LinExpr operator-(Var a, const LinExpr &b) { return LinExpr(a) - b; }
inline LinExpr operator*(const Rational &k, Var v) { return LinExpr(v) * k; }

enum class Rel : std::uint8_t { lt, le, eq };

inline std::string_view to_string(Rel r)
{
	switch (r) {
	case Rel::lt: return "<";
	case Rel::le: return "<=";
	default: return "=";
	}
}

inline Rel parse_rel(std::string_view s)
{
	if (s == "<")
		return Rel::lt;
	if (s == "<=")
		return Rel::le;
	if (s == "=")
		return Rel::eq;
	throw parse_error("unknown relation '" + std::string(s) + "'");
}

inline bool holds(const Rational &residual, Rel r)
{
	switch (r) {
	case Rel::lt: return residual.sign() < 0;
	case Rel::le: return residual.sign() <= 0;
	default: return residual.is_zero();
	}
}

/* expr REL 0, with a provenance label. */
struct Constraint {
	LinExpr expr;
	Rel rel = Rel::le;
	std::string label;

	bool satisfied_by(const ExponentAssignment &w) const { return holds(expr.evaluate(w), rel); }

	std::string str() const { return expr.str() + " " + std::string(to_string(rel)) + " 0"; }

	friend bool operator==(const Constraint &, const Constraint &) = default;
};

inline Constraint lt(const LinExpr &lhs, const LinExpr &rhs, std::string label) { return {lhs - rhs, Rel::lt, std::move(label)}; }
inline Constraint le(const LinExpr &lhs, const LinExpr &rhs, std::string label) { return {lhs - rhs, Rel::le, std::move(label)}; }
inline Constraint eq(const LinExpr &lhs, const LinExpr &rhs, std::string label) { return {lhs - rhs, Rel::eq, std::move(label)}; }
inline Constraint gt(const LinExpr &lhs, const LinExpr &rhs, std::string label) { return {rhs - lhs, Rel::lt, std::move(label)}; }
inline Constraint ge(const LinExpr &lhs, const LinExpr &rhs, std::string label) { return {rhs - lhs, Rel::le, std::move(label)}; }

/* Declared variables (order matters: it is the elimination order) and a list
 * of labeled constraints over them. */
class ConstraintSystem {
	std::vector<Var> vars_;
	std::vector<Constraint> cons_;

public:
	ConstraintSystem() = default;
	explicit ConstraintSystem(std::vector<Var> vars)
	{
		for (Var v : vars)
			declare(v);
	}

	const std::vector<Var> &variables() const { return vars_; }
	const std::vector<Constraint> &constraints() const { return cons_; }

	bool declared(Var v) const { return std::find(vars_.begin(), vars_.end(), v) != vars_.end(); }

	ConstraintSystem &declare(Var v)
	{
		if (declared(v))
			throw error("variable " + std::string(name(v)) + " declared twice");
		vars_.push_back(v);
		return *this;
	}

	/* Declare if absent. */
	ConstraintSystem &ensure(Var v)
	{
		if (!declared(v))
			vars_.push_back(v);
		return *this;
	}

	ConstraintSystem &add(Constraint c)
	{
		for (const auto &[v, a] : c.expr.terms())
			if (!declared(v))
				throw error("constraint '" + c.label + "' uses undeclared variable " + std::string(name(v)));
		cons_.push_back(std::move(c));
		return *this;
	}

	ConstraintSystem &add_all(const ConstraintSystem &other)
	{
		for (Var v : other.vars_)
			ensure(v);
		for (const auto &c : other.cons_)
			add(c);
		return *this;
	}

	/* Same constraints, variables reordered so that `last` comes last. */
	ConstraintSystem with_last(Var last) const
	{
		ConstraintSystem out = *this;
		auto it = std::find(out.vars_.begin(), out.vars_.end(), last);
		if (it == out.vars_.end())
			throw error("variable " + std::string(name(last)) + " is not declared");
		out.vars_.erase(it);
		out.vars_.push_back(last);
		return out;
	}

	ConstraintSystem with_order(std::vector<Var> order) const
	{
		ConstraintSystem out;
		for (Var v : order)
			out.declare(v);
		if (out.vars_.size() != vars_.size() || !std::all_of(vars_.begin(), vars_.end(), [&](Var v) { return out.declared(v); }))
			throw error("with_order: not a permutation of the declared variables");
		out.cons_ = cons_;
		return out;
	}

	friend bool operator==(const ConstraintSystem &, const ConstraintSystem &) = default;
};

} // namespace uniq

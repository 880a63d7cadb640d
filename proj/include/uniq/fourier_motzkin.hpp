#pragma once

#include "interval_set.hpp"
#include "linear.hpp"

#include <bit>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace uniq {

struct Verdict {
	bool feasible = false;
	ExponentAssignment witness;            // present iff feasible
	std::vector<std::string> certificate;  // present iff infeasible; labels of an infeasible subset
};

struct Violation {
	std::string label;
	Rel rel;
	Rational residual;
};

struct EqualityReduction {
	ConstraintSystem system;                      // no "=" constraints left
	std::vector<std::pair<Var, LinExpr>> map;     // var -> expression over the remaining variables
	bool contradiction = false;
	std::vector<std::string> certificate;
};

struct FmOptions {
	/* Drop derived rows with more than k+1 inequality ancestors after k
	 * eliminations (Chernikov/Imbert). Sound; off only for cross-checks. */
	bool prune_by_history = true;
};

namespace detail {

/* Set of original constraint indices a derived row depends on. */
class Provenance {
	std::vector<std::uint64_t> w_;

public:
	Provenance() = default;
	explicit Provenance(std::size_t index) { set(index); }

	void set(std::size_t i)
	{
		if (w_.size() <= i / 64)
			w_.resize(i / 64 + 1, 0);
		w_[i / 64] |= std::uint64_t(1) << (i % 64);
	}

	Provenance &operator|=(const Provenance &o)
	{
		if (w_.size() < o.w_.size())
			w_.resize(o.w_.size(), 0);
		for (std::size_t k = 0; k < o.w_.size(); ++k)
			w_[k] |= o.w_[k];
		return *this;
	}

	friend Provenance operator|(Provenance a, const Provenance &b) { return a |= b; }

	std::size_t count_excluding(const Provenance &mask) const
	{
		std::size_t n = 0;
		for (std::size_t k = 0; k < w_.size(); ++k) {
			std::uint64_t m = k < mask.w_.size() ? mask.w_[k] : 0;
			n += static_cast<std::size_t>(std::popcount(w_[k] & ~m));
		}
		return n;
	}

	bool subset_of(const Provenance &o) const
	{
		for (std::size_t k = 0; k < w_.size(); ++k) {
			std::uint64_t m = k < o.w_.size() ? o.w_[k] : 0;
			if (w_[k] & ~m)
				return false;
		}
		return true;
	}

	std::vector<std::size_t> indices() const
	{
		std::vector<std::size_t> out;
		for (std::size_t k = 0; k < w_.size(); ++k)
			for (std::size_t b = 0; b < 64; ++b)
				if (w_[k] >> b & 1)
					out.push_back(k * 64 + b);
		return out;
	}
};

struct Row {
	LinExpr expr;
	Rel rel;  // lt or le
	Provenance prov;
};

/* Positive rescaling so the first coefficient is +-1. */
inline void normalize(Row &r)
{
	if (r.expr.is_constant())
		return;
	Rational lead = r.expr.terms().front().second.abs();
	if (lead != 1)
		r.expr *= Rational(1) / lead;
}

inline bool constant_holds(const Row &r) { return holds(r.expr.constant(), r.rel); }

/* Rows after a stage, plus the provenance of every constant row that came
 * out false at that stage. */
struct Stage {
	std::vector<Row> rows;
	std::optional<Provenance> contradiction;
};

/* Does a admit no more points than b? (same variable part assumed) */
inline bool at_least_as_tight(const Row &a, const Row &b)
{
	if (a.expr.constant() != b.expr.constant())
		return a.expr.constant() > b.expr.constant();
	return a.rel == Rel::lt || b.rel == Rel::le;
}

/* Normalize, drop true constants, collect false ones, and drop a row when a
 * parallel row is at least as tight and has a history contained in its own.
 * The history condition keeps the pruning rule sound: anything derived from
 * the dropped row is dominated by a row derived from the kept one whose
 * history is no larger. */
inline Stage tidy(std::vector<Row> rows)
{
	Stage st;
	std::map<std::vector<std::pair<Var, Rational>>, std::vector<std::size_t>> parallel;
	std::vector<bool> dead;
	for (auto &r : rows) {
		normalize(r);
		if (r.expr.is_constant()) {
			if (!constant_holds(r)) {
				if (!st.contradiction)
					st.contradiction = r.prov;
				else
					*st.contradiction |= r.prov;
			}
			continue;
		}
		auto &group = parallel[r.expr.terms()];
		bool dominated = false;
		for (std::size_t i : group)
			if (!dead[i] && at_least_as_tight(st.rows[i], r) && st.rows[i].prov.subset_of(r.prov)) {
				dominated = true;
				break;
			}
		if (dominated)
			continue;
		for (std::size_t i : group)
			if (!dead[i] && at_least_as_tight(r, st.rows[i]) && r.prov.subset_of(st.rows[i].prov))
				dead[i] = true;
		group.push_back(st.rows.size());
		st.rows.push_back(std::move(r));
		dead.push_back(false);
	}
	std::size_t k = 0;
	for (std::size_t i = 0; i < st.rows.size(); ++i)
		if (!dead[i]) {
			if (k != i)
				st.rows[k] = std::move(st.rows[i]);
			++k;
		}
	st.rows.resize(k);
	return st;
}

inline std::vector<Row> eliminate_rows(const std::vector<Row> &rows, Var v, const FmOptions &opt,
                                       std::size_t eliminated_after, const Provenance &equality_mask)
{
	std::vector<const Row *> pos, neg;
	std::vector<Row> out;
	for (const auto &r : rows) {
		int sg = r.expr.coeff(v).sign();
		if (sg > 0)
			pos.push_back(&r);
		else if (sg < 0)
			neg.push_back(&r);
		else
			out.push_back(r);
	}
	for (const Row *p : pos) {
		Rational a = p->expr.coeff(v);
		for (const Row *n : neg) {
			Rational b = -n->expr.coeff(v);
			Provenance prov = p->prov | n->prov;
			if (opt.prune_by_history && prov.count_excluding(equality_mask) > eliminated_after + 1)
				continue;
			Row r{p->expr * b + n->expr * a, (p->rel == Rel::lt || n->rel == Rel::lt) ? Rel::lt : Rel::le, std::move(prov)};
			out.push_back(std::move(r));
		}
	}
	return out;
}

struct Reduced {
	std::vector<Row> rows;
	std::vector<Var> free_vars;                                   // declaration order, substituted removed
	std::vector<std::pair<Var, LinExpr>> substitutions;           // in terms of free vars only
	Provenance equality_mask;
	std::optional<Provenance> contradiction;
};

/* Solve each equality for its first declared variable and substitute
 * everywhere else. */
inline Reduced reduce(const ConstraintSystem &s)
{
	Reduced out;
	const auto &cons = s.constraints();
	struct Eq {
		LinExpr expr;
		Provenance prov;
	};
	std::vector<Eq> eqs;
	for (std::size_t i = 0; i < cons.size(); ++i) {
		if (cons[i].rel == Rel::eq) {
			eqs.push_back({cons[i].expr, Provenance(i)});
			out.equality_mask.set(i);
		} else {
			out.rows.push_back({cons[i].expr, cons[i].rel, Provenance(i)});
		}
	}
	std::vector<Var> order = s.variables();
	std::vector<bool> substituted(var_count, false);
	std::vector<Provenance> subst_prov;

	for (std::size_t k = 0; k < eqs.size(); ++k) {
		Eq &e = eqs[k];
		std::optional<Var> pick;
		for (Var v : order)
			if (!e.expr.coeff(v).is_zero()) {
				pick = v;
				break;
			}
		if (!pick) {
			if (!e.expr.constant().is_zero()) {
				if (!out.contradiction)
					out.contradiction = e.prov;
				else
					*out.contradiction |= e.prov;
			}
			continue;
		}
		Var v = *pick;
		Rational a = e.expr.coeff(v);
		// v = -(expr - a v)/a
		LinExpr rest = e.expr.substitute(v, LinExpr(0));
		LinExpr sol = rest * (Rational(-1) / a);
		for (std::size_t j = k + 1; j < eqs.size(); ++j)
			if (!eqs[j].expr.coeff(v).is_zero()) {
				eqs[j].expr = eqs[j].expr.substitute(v, sol);
				eqs[j].prov |= e.prov;
			}
		for (auto &r : out.rows)
			if (!r.expr.coeff(v).is_zero()) {
				r.expr = r.expr.substitute(v, sol);
				r.prov |= e.prov;
			}
		for (std::size_t j = 0; j < out.substitutions.size(); ++j) {
			auto &[w, ex] = out.substitutions[j];
			if (!ex.coeff(v).is_zero()) {
				ex = ex.substitute(v, sol);
				subst_prov[j] |= e.prov;
			}
		}
		out.substitutions.emplace_back(v, sol);
		subst_prov.push_back(e.prov);
		substituted[static_cast<std::size_t>(v)] = true;
	}
	for (Var v : order)
		if (!substituted[static_cast<std::size_t>(v)])
			out.free_vars.push_back(v);
	return out;
}

inline std::vector<std::string> labels_of(const ConstraintSystem &s, const Provenance &p)
{
	std::vector<std::string> out;
	for (auto i : p.indices())
		out.push_back(s.constraints()[i].label);
	return out;
}

inline std::string joined_labels(const ConstraintSystem &s, const Provenance &p)
{
	std::string out;
	for (const auto &l : labels_of(s, p)) {
		if (!out.empty())
			out += " & ";
		out += l;
	}
	return out;
}

/* Interval of admissible values for v from rows whose other variables are
 * already assigned. */
inline Interval residual_interval(const std::vector<Row> &rows, Var v, const ExponentAssignment &w)
{
	Interval iv;
	for (const auto &r : rows) {
		Rational a = r.expr.coeff(v);
		if (a.is_zero())
			continue;
		Rational rest = r.expr.substitute(v, LinExpr(0)).evaluate(w);
		Rational bound = -rest / a;
		Closedness c = r.rel == Rel::lt ? Closedness::open : Closedness::closed;
		if (a.sign() > 0)
			iv.hi = tighter_upper(iv.hi, Bound(bound, c));
		else
			iv.lo = tighter_lower(iv.lo, Bound(bound, c));
	}
	return iv;
}

/* Normative witness choice: midpoint of finite bounds, lower+1 / upper-1 when
 * half-bounded, 0 when unbounded. */
inline Rational pick_value(const Interval &iv)
{
	bool lo = iv.lo.value.is_finite(), hi = iv.hi.value.is_finite();
	if (lo && hi) {
		if (iv.lo.value == iv.hi.value)
			return iv.lo.value.value();
		return (iv.lo.value.value() + iv.hi.value.value()) / 2;
	}
	if (lo)
		return iv.lo.value.value() + 1;
	if (hi)
		return iv.hi.value.value() - 1;
	return 0;
}

} // namespace detail

/* Remove all "=" constraints by substitution. */
inline EqualityReduction substitute_equalities(const ConstraintSystem &s)
{
	auto red = detail::reduce(s);
	EqualityReduction out;
	for (Var v : red.free_vars)
		out.system.declare(v);
	for (const auto &r : red.rows) {
		auto idx = r.prov.indices();
		// first index is the inequality itself (equalities have other indices)
		std::string label;
		for (auto i : idx)
			if (s.constraints()[i].rel != Rel::eq) {
				label = s.constraints()[i].label;
				break;
			}
		out.system.add({r.expr, r.rel, label});
	}
	out.map = red.substitutions;
	if (red.contradiction) {
		out.contradiction = true;
		out.certificate = detail::labels_of(s, *red.contradiction);
	}
	return out;
}

/* One Fourier-Motzkin step on an equality-free system. Every (lower, upper)
 * pair of bounds on v yields a row, strict iff either parent is strict;
 * labels of the parents are concatenated. Constant rows are kept. */
inline ConstraintSystem fm_eliminate(const ConstraintSystem &s, Var v)
{
	if (!s.declared(v))
		throw error("fm_eliminate: variable " + std::string(name(v)) + " is not declared");
	std::vector<detail::Row> rows;
	for (std::size_t i = 0; i < s.constraints().size(); ++i) {
		const auto &c = s.constraints()[i];
		if (c.rel == Rel::eq)
			throw error("fm_eliminate: equalities must be substituted first ('" + c.label + "')");
		rows.push_back({c.expr, c.rel, detail::Provenance(i)});
	}
	auto next = detail::eliminate_rows(rows, v, FmOptions{false}, 1, detail::Provenance());
	ConstraintSystem out;
	for (Var x : s.variables())
		if (x != v)
			out.declare(x);
	for (auto &r : next)
		out.add({std::move(r.expr), r.rel, detail::joined_labels(s, r.prov)});
	return out;
}

/* Eliminates variables in declaration order; on success back-substitutes
 * with the midpoint rule (last-eliminated variable first). */
inline Verdict is_feasible(const ConstraintSystem &s, const FmOptions &opt = {})
{
	Verdict out;
	auto red = detail::reduce(s);
	auto fail = [&](const detail::Provenance &p) {
		out.feasible = false;
		out.certificate = detail::labels_of(s, p);
		return out;
	};
	if (red.contradiction)
		return fail(*red.contradiction);

	auto st = detail::tidy(std::move(red.rows));
	if (st.contradiction)
		return fail(*st.contradiction);

	std::vector<std::vector<detail::Row>> stages;
	std::vector<detail::Row> rows = std::move(st.rows);
	for (std::size_t k = 0; k < red.free_vars.size(); ++k) {
		stages.push_back(rows);
		auto next = detail::tidy(detail::eliminate_rows(rows, red.free_vars[k], opt, k + 1, red.equality_mask));
		if (next.contradiction)
			return fail(*next.contradiction);
		rows = std::move(next.rows);
	}

	ExponentAssignment w;
	for (std::size_t k = red.free_vars.size(); k-- > 0;) {
		Var v = red.free_vars[k];
		w[v] = detail::pick_value(detail::residual_interval(stages[k], v, w));
	}
	for (const auto &[v, e] : red.substitutions)
		w[v] = e.evaluate(w);
	out.feasible = true;
	out.witness = std::move(w);
	return out;
}

/* {x : s with v pinned to x is feasible}. */
inline IntervalSet project_interval(const ConstraintSystem &s, Var v, const FmOptions &opt = {})
{
	auto ordered = s.with_last(v);
	auto red = detail::reduce(ordered);
	if (red.contradiction)
		return {};
	auto st = detail::tidy(std::move(red.rows));
	if (st.contradiction)
		return {};
	std::vector<detail::Row> rows = std::move(st.rows);

	std::optional<Rational> pinned;
	for (const auto &[x, e] : red.substitutions)
		if (x == v) {
			if (!e.is_constant())
				throw error("project_interval: internal error, projected variable solved in terms of others");
			pinned = e.constant();
		}

	std::size_t k = 0;
	for (Var x : red.free_vars) {
		if (x == v)
			continue;
		++k;
		auto next = detail::tidy(detail::eliminate_rows(rows, x, opt, k, red.equality_mask));
		if (next.contradiction)
			return {};
		rows = std::move(next.rows);
	}
	if (pinned)
		return IntervalSet::point(*pinned);

	Interval iv;
	for (const auto &r : rows) {
		Rational a = r.expr.coeff(v);
		Rational bound = -r.expr.constant() / a;
		Closedness c = r.rel == Rel::lt ? Closedness::open : Closedness::closed;
		if (a.sign() > 0)
			iv.hi = detail::tighter_upper(iv.hi, Bound(bound, c));
		else
			iv.lo = detail::tighter_lower(iv.lo, Bound(bound, c));
	}
	return IntervalSet(iv);
}

/* Every constraint violated by w, with its residual (expr evaluated at w). */
inline std::vector<Violation> check_assignment(const ConstraintSystem &s, const ExponentAssignment &w)
{
	for (Var v : s.variables())
		if (!w.contains(v))
			throw error("check_assignment: no value for " + std::string(name(v)));
	std::vector<Violation> out;
	for (const auto &c : s.constraints()) {
		Rational r = c.expr.evaluate(w);
		if (!holds(r, c.rel))
			out.push_back({c.label, c.rel, r});
	}
	return out;
}

} // namespace uniq

#pragma once

#include "fourier_motzkin.hpp"
#include "predicates.hpp"
#include "scenarios.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

namespace uniq {

enum class Status : std::uint8_t { F, T, NA };

inline const char *to_string(Status s)
{
	switch (s) {
	case Status::T: return "T";
	case Status::F: return "F";
	default: return "NA";
	}
}

/* Uniform lattice s_lo + i*step, alpha_lo + j*step. */
struct GridSpec {
	int n = 3;
	Rational s_lo, s_hi;
	Rational alpha_lo, alpha_hi;
	Rational step;

	void validate() const
	{
		if (n < 2)
			throw error("grid: n must be >= 2");
		if (step.sign() <= 0)
			throw error("grid: step must be > 0");
		if (s_hi < s_lo || alpha_hi < alpha_lo)
			throw error("grid: empty range");
		if (!((s_hi - s_lo) / step).is_integer())
			throw error("grid: step " + step.str() + " does not divide the s range width " + (s_hi - s_lo).str());
		if (!((alpha_hi - alpha_lo) / step).is_integer())
			throw error("grid: step " + step.str() + " does not divide the alpha range width " + (alpha_hi - alpha_lo).str());
	}

	static std::vector<Rational> points(const Rational &lo, const Rational &hi, const Rational &step)
	{
		std::vector<Rational> out;
		long k = ((hi - lo) / step).numerator().get_si();
		out.reserve(static_cast<std::size_t>(k) + 1);
		for (long i = 0; i <= k; ++i)
			out.push_back(lo + step * Rational(i));
		return out;
	}
	std::vector<Rational> s_points() const { return points(s_lo, s_hi, step); }
	std::vector<Rational> alpha_points() const { return points(alpha_lo, alpha_hi, step); }
};

/* Upper end of the alpha axis used for figures and audits. */
inline Rational alpha_max(int n)
{
	switch (n) {
	case 2:
	case 3: return 4;
	case 4: return 2;
	case 5: return Rational(3, 2);
	default: return 1;
	}
}

/* s in [step, 1-step], alpha in [step, alpha_max(n)]. */
inline GridSpec audit_grid(int n, const Rational &step)
{
	return {n, step, 1 - step, step, alpha_max(n), step};
}

/* ---- targets ---- */

using Atom = std::variant<ScenarioId, PredicateId>;

enum class Filter : std::uint8_t { above_sobolev, below_energy, alpha_ge_1, alpha_lt_1 };

inline std::string_view to_string(Filter f)
{
	switch (f) {
	case Filter::above_sobolev: return "alpha>2s/(n-2s)";
	case Filter::below_energy: return "alpha<4/(n-2s)";
	case Filter::alpha_ge_1: return "alpha>=1";
	default: return "alpha<1";
	}
}

inline std::string_view atom_name(const Atom &a)
{
	return std::visit([](auto id) { return to_string(id); }, a);
}

/* Union of atoms, intersected with optional filters:
 * "thm11|thm12", "kato&alpha>2s/(n-2s)". */
struct Target {
	std::vector<Atom> atoms;
	std::vector<Filter> filters;

	std::string str() const
	{
		std::string out;
		for (std::size_t k = 0; k < atoms.size(); ++k)
			out += (k ? "|" : "") + std::string(atom_name(atoms[k]));
		for (Filter f : filters)
			out += "&" + std::string(to_string(f));
		return out;
	}

	bool has_scenario() const
	{
		for (const auto &a : atoms)
			if (std::holds_alternative<ScenarioId>(a))
				return true;
		return false;
	}

	static Target parse(std::string_view text)
	{
		Target t;
		auto amp = text.find('&');
		std::string_view head = text.substr(0, amp);
		while (true) {
			auto bar = head.find('|');
			std::string_view tok = head.substr(0, bar);
			if (auto s = try_parse_scenario(tok))
				t.atoms.emplace_back(*s);
			else if (auto p = try_parse_predicate(tok))
				t.atoms.emplace_back(*p);
			else
				throw parse_error("unknown target '" + std::string(tok) + "'");
			if (bar == std::string_view::npos)
				break;
			head.remove_prefix(bar + 1);
		}
		while (amp != std::string_view::npos) {
			text.remove_prefix(amp + 1);
			amp = text.find('&');
			std::string_view tok = text.substr(0, amp);
			bool found = false;
			for (Filter f : {Filter::above_sobolev, Filter::below_energy, Filter::alpha_ge_1, Filter::alpha_lt_1})
				if (to_string(f) == tok) {
					t.filters.push_back(f);
					found = true;
				}
			if (!found)
				throw parse_error("unknown target filter '" + std::string(tok) + "'");
		}
		return t;
	}
};

inline bool filter_holds(Filter f, const ProblemParams &p)
{
	const Rational d = Rational(p.n) - 2 * p.s;
	switch (f) {
	case Filter::above_sobolev: return d.sign() > 0 && p.alpha > 2 * p.s / d;
	case Filter::below_energy: return d.sign() > 0 && p.alpha < Rational(4) / d;
	case Filter::alpha_ge_1: return p.alpha >= 1;
	default: return p.alpha < 1;
	}
}

/* Predicates that compare against s0 are retried with finer enclosures;
 * rational points never coincide with the irrational root. */
inline bool predicate_exact(PredicateId id, const ProblemParams &p)
{
	Rational tol = default_s0_tol();
	for (int k = 0; k < 8; ++k, tol /= Rational(1L << 20, 1)) {
		try {
			return predicate_holds(id, p, tol);
		} catch (const undecidable_at_precision &) {
		}
	}
	throw undecidable_at_precision("predicate " + std::string(to_string(id)) + " undecidable at " + p.str());
}

inline Status evaluate_atom(const Atom &a, const ProblemParams &p)
{
	if (const auto *pid = std::get_if<PredicateId>(&a))
		return predicate_exact(*pid, p) ? Status::T : Status::F;
	ScenarioId id = std::get<ScenarioId>(a);
	try {
		p.validate();
	} catch (const error &) {
		return Status::NA;
	}
	if (!applicable(id, p))
		return Status::NA;
	try {
		return is_feasible(build_scenario(id, p)).feasible ? Status::T : Status::F;
	} catch (const scenario_not_applicable &) {
		return Status::NA;
	}
}

/* Any T gives T; all NA gives NA; a failing filter gives F. */
inline Status evaluate(const Target &t, const ProblemParams &p)
{
	bool all_na = true;
	for (const auto &a : t.atoms) {
		Status s = evaluate_atom(a, p);
		if (s == Status::T) {
			all_na = false;
			for (Filter f : t.filters)
				if (!filter_holds(f, p))
					return Status::F;
			return Status::T;
		}
		all_na = all_na && s == Status::NA;
	}
	return all_na && !t.atoms.empty() ? Status::NA : Status::F;
}

/* ---- scan ---- */

class RegionGrid {
	GridSpec spec_;
	std::vector<Target> targets_;
	std::vector<Rational> s_, a_;
	std::vector<Status> cells_; // [(i * |alpha| + j) * |targets| + k]

public:
	RegionGrid(GridSpec spec, std::vector<Target> targets)
	    : spec_(std::move(spec)), targets_(std::move(targets)), s_(spec_.s_points()), a_(spec_.alpha_points()),
	      cells_(s_.size() * a_.size() * targets_.size(), Status::NA)
	{
	}

	const GridSpec &spec() const { return spec_; }
	const std::vector<Target> &targets() const { return targets_; }
	const std::vector<Rational> &s_points() const { return s_; }
	const std::vector<Rational> &alpha_points() const { return a_; }

	std::size_t index(std::size_t i, std::size_t j, std::size_t k) const { return (i * a_.size() + j) * targets_.size() + k; }
	Status at(std::size_t i, std::size_t j, std::size_t k) const { return cells_[index(i, j, k)]; }
	Status &at(std::size_t i, std::size_t j, std::size_t k) { return cells_[index(i, j, k)]; }

	std::size_t target_index(const std::string &name) const
	{
		for (std::size_t k = 0; k < targets_.size(); ++k)
			if (targets_[k].str() == name)
				return k;
		throw error("target '" + name + "' is not in the grid");
	}

	friend bool operator==(const RegionGrid &a, const RegionGrid &b)
	{
		return a.s_ == b.s_ && a.a_ == b.a_ && a.cells_ == b.cells_ && a.targets_.size() == b.targets_.size();
	}
};

/* UNIQ_REGIONS_THREADS if set to a positive integer, else the hardware count. */
inline unsigned scan_threads()
{
	if (const char *e = std::getenv("UNIQ_REGIONS_THREADS")) {
		char *end = nullptr;
		long v = std::strtol(e, &end, 10);
		if (end != e && *end == '\0' && v > 0)
			return static_cast<unsigned>(v);
	}
	unsigned h = std::thread::hardware_concurrency();
	return h ? h : 1;
}

/* Rows of constant s are handed out dynamically; each cell has a fixed
 * slot, so the result does not depend on scheduling. */
inline RegionGrid scan(const GridSpec &spec, const std::vector<Target> &targets, unsigned threads = scan_threads())
{
	spec.validate();
	if (targets.empty())
		throw error("scan: no targets");
	RegionGrid g(spec, targets);
	const auto &sp = g.s_points();
	const auto &ap = g.alpha_points();
	std::atomic<std::size_t> next{0};
	auto work = [&] {
		for (std::size_t i; (i = next.fetch_add(1)) < sp.size();)
			for (std::size_t j = 0; j < ap.size(); ++j) {
				ProblemParams p{spec.n, sp[i], ap[j]};
				for (std::size_t k = 0; k < targets.size(); ++k)
					g.at(i, j, k) = evaluate(targets[k], p);
			}
	};
	threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(sp.size())));
	if (threads == 1) {
		work();
		return g;
	}
	std::vector<std::thread> pool;
	std::exception_ptr failure;
	std::mutex m;
	for (unsigned t = 0; t < threads; ++t)
		pool.emplace_back([&] {
			try {
				work();
			} catch (...) {
				std::lock_guard lk(m);
				if (!failure)
					failure = std::current_exception();
				next = sp.size();
			}
		});
	for (auto &th : pool)
		th.join();
	if (failure)
		std::rethrow_exception(failure);
	return g;
}

inline std::vector<Target> parse_targets(const std::vector<std::string> &names)
{
	std::vector<Target> out;
	for (const auto &n : names)
		out.push_back(Target::parse(n));
	return out;
}

/* "s,alpha,<targets>" then one row per lattice point, s outer. */
inline std::string to_csv(const RegionGrid &g)
{
	std::ostringstream os;
	os << "s,alpha";
	for (const auto &t : g.targets())
		os << ',' << t.str();
	os << '\n';
	for (std::size_t i = 0; i < g.s_points().size(); ++i)
		for (std::size_t j = 0; j < g.alpha_points().size(); ++j) {
			os << g.s_points()[i] << ',' << g.alpha_points()[j];
			for (std::size_t k = 0; k < g.targets().size(); ++k)
				os << ',' << to_string(g.at(i, j, k));
			os << '\n';
		}
	return os.str();
}

/* ---- boundaries ---- */

/* [lo, hi] with different statuses at the two ends. */
struct Bracket {
	Rational lo;
	Rational hi;
	Status at_lo = Status::F;
	Status at_hi = Status::F;

	bool contains(const Rational &x) const { return lo <= x && x <= hi; }
};

inline Bracket bisect(const std::function<Status(const Rational &)> &f, Bracket b, const Rational &tol)
{
	while (b.hi - b.lo > tol) {
		Rational mid = (b.lo + b.hi) / 2;
		Status v = f(mid);
		if (v == b.at_lo)
			b.lo = mid;
		else {
			b.hi = mid;
			b.at_hi = v;
		}
	}
	return b;
}

/* Every status change of f between consecutive samples of [lo, hi], each
 * narrowed to width <= tol. */
inline std::vector<Bracket> trace(const std::function<Status(const Rational &)> &f, const Rational &lo, const Rational &hi,
                                  const Rational &tol, int samples = 256)
{
	if (!(lo < hi) || samples < 1 || tol.sign() <= 0)
		throw error("trace: need lo < hi, samples >= 1, tol > 0");
	std::vector<Bracket> out;
	Rational h = (hi - lo) / Rational(samples);
	Rational x = lo;
	Status v = f(x);
	for (int k = 1; k <= samples; ++k) {
		Rational y = lo + h * Rational(k);
		Status w = f(y);
		if (w != v)
			out.push_back(bisect(f, {x, y, v, w}, tol));
		x = y;
		v = w;
	}
	return out;
}

/* alpha-boundaries of target at fixed (n, s), searched over (0, alpha_max(n)]. */
inline std::vector<Bracket> boundary_trace(int n, const Target &t, const Rational &s, const Rational &tol,
                                           std::optional<Rational> a_hi = std::nullopt, int samples = 256)
{
	Rational hi = a_hi ? *a_hi : alpha_max(n);
	return trace([&](const Rational &a) { return evaluate(t, {n, s, a}); }, hi / Rational(samples), hi, tol, samples - 1);
}

enum class Curve : std::uint8_t { energy, distributional };

inline Rational curve_alpha(Curve c, int n, const Rational &s)
{
	return c == Curve::energy ? energy_critical(n, s) : distributional_critical(n, s);
}

/* s-boundaries of target along alpha = curve(s). */
inline std::vector<Bracket> boundary_trace_s(int n, const Target &t, Curve c, const Rational &s_lo, const Rational &s_hi,
                                             const Rational &tol, int samples = 64)
{
	return trace([&](const Rational &s) { return evaluate(t, {n, s, curve_alpha(c, n, s)}); }, s_lo, s_hi, tol, samples);
}

/* ---- comparison ---- */

enum class CompareMode : std::uint8_t { equality, subset };

struct Mismatch {
	Rational s, alpha;
	Status a = Status::F, b = Status::F;
	std::optional<Rational> distance; // to the nearest traced boundary; none within two steps
	bool boundary_adjacent = false;
};

struct MismatchReport {
	std::string a, b;
	CompareMode mode = CompareMode::equality;
	Rational step;
	std::vector<Mismatch> items;

	bool empty() const { return items.empty(); }
	std::size_t interior() const
	{
		std::size_t k = 0;
		for (const auto &m : items)
			k += !m.boundary_adjacent;
		return k;
	}
};

namespace detail {

/* Distance from x to the closest status change of f within [x-2h, x+2h],
 * located to width h/1024 on the lattice neighbours. */
inline std::optional<Rational> local_boundary(const std::function<Status(const Rational &)> &f, const Rational &x,
                                              const Rational &h)
{
	std::optional<Rational> best;
	Rational tol = h / Rational(1024);
	std::vector<Rational> xs;
	for (int k = -2; k <= 2; ++k)
		xs.push_back(x + h * Rational(k));
	std::vector<Status> vs;
	for (const auto &y : xs)
		vs.push_back(f(y));
	for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
		if (vs[k] == vs[k + 1])
			continue;
		Bracket b = bisect(f, {xs[k], xs[k + 1], vs[k], vs[k + 1]}, tol);
		Rational d = b.contains(x) ? Rational(0) : min((b.lo - x).abs(), (b.hi - x).abs());
		if (!best || d < *best)
			best = d;
	}
	return best;
}

} // namespace detail

inline std::optional<Rational> nearest_boundary(int n, const Target &t, const Rational &s, const Rational &alpha,
                                                const Rational &step)
{
	auto along_alpha = detail::local_boundary([&](const Rational &a) { return evaluate(t, {n, s, a}); }, alpha, step);
	auto along_s = detail::local_boundary([&](const Rational &x) { return evaluate(t, {n, x, alpha}); }, s, step);
	if (!along_alpha)
		return along_s;
	if (!along_s)
		return along_alpha;
	return min(*along_alpha, *along_s);
}

/* equality: T-ness differs; subset: a is T where b is not. */
inline MismatchReport compare(const RegionGrid &g, const std::string &a, const std::string &b,
                              CompareMode mode = CompareMode::equality)
{
	std::size_t ka = g.target_index(a), kb = g.target_index(b);
	MismatchReport rep{a, b, mode, g.spec().step, {}};
	const Target &ta = g.targets()[ka], &tb = g.targets()[kb];
	for (std::size_t i = 0; i < g.s_points().size(); ++i)
		for (std::size_t j = 0; j < g.alpha_points().size(); ++j) {
			Status x = g.at(i, j, ka), y = g.at(i, j, kb);
			bool tx = x == Status::T, ty = y == Status::T;
			bool bad = mode == CompareMode::equality ? tx != ty : tx && !ty;
			if (!bad)
				continue;
			Mismatch m{g.s_points()[i], g.alpha_points()[j], x, y, std::nullopt, false};
			const int n = g.spec().n;
			auto da = nearest_boundary(n, ta, m.s, m.alpha, rep.step);
			auto db = nearest_boundary(n, tb, m.s, m.alpha, rep.step);
			m.distance = !da ? db : !db ? da : std::optional<Rational>(min(*da, *db));
			m.boundary_adjacent = m.distance && *m.distance <= rep.step;
			rep.items.push_back(std::move(m));
		}
	return rep;
}

} // namespace uniq

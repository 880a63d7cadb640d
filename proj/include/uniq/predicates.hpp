#pragma once

#include "params.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uniq {

enum class PredicateId : std::uint8_t {
	Thm11,
	Thm12,
	Thm15,
	Thm16,
	Kato,
	FurioliTerraneo,
	Rogers,
	WinTsutsumiSub,
	WinTsutsumiCrit,
	CazenaveCrit,
	OpenSub,
	OpenCrit,
};

inline constexpr std::array<PredicateId, 12> all_predicates = {
	PredicateId::Thm11,         PredicateId::Thm12,          PredicateId::Thm15,           PredicateId::Thm16,
	PredicateId::Kato,          PredicateId::FurioliTerraneo, PredicateId::Rogers,         PredicateId::WinTsutsumiSub,
	PredicateId::WinTsutsumiCrit, PredicateId::CazenaveCrit, PredicateId::OpenSub,         PredicateId::OpenCrit,
};

inline std::string_view to_string(PredicateId id)
{
	switch (id) {
	case PredicateId::Thm11: return "thm11";
	case PredicateId::Thm12: return "thm12";
	case PredicateId::Thm15: return "thm15";
	case PredicateId::Thm16: return "thm16";
	case PredicateId::Kato: return "kato";
	case PredicateId::FurioliTerraneo: return "furioli-terraneo";
	case PredicateId::Rogers: return "rogers";
	case PredicateId::WinTsutsumiSub: return "win-tsutsumi-sub";
	case PredicateId::WinTsutsumiCrit: return "win-tsutsumi-crit";
	case PredicateId::CazenaveCrit: return "cazenave-crit";
	case PredicateId::OpenSub: return "open-sub";
	default: return "open-crit";
	}
}

inline std::optional<PredicateId> try_parse_predicate(std::string_view s)
{
	for (PredicateId id : all_predicates)
		if (to_string(id) == s)
			return id;
	return std::nullopt;
}

inline bool is_theorem(PredicateId id) { return id <= PredicateId::Thm16; }

struct undecidable_at_precision : error {
	using error::error;
};

/* ---- s0 ---- */

/* 4(n-1)s^2 - (2n^2+8n-8)s + n^2 */
inline Rational s0_polynomial(int n, const Rational &s)
{
	const Rational N(n);
	return 4 * (N - 1) * s * s - (2 * N * N + 8 * N - 8) * s + N * N;
}

struct S0Enclosure {
	Rational lower;
	Rational upper;
};

inline const Rational &default_s0_tol()
{
	static const Rational t = Rational(1) / Rational::parse("1099511627776"); // 2^-40
	return t;
}

/* Certified enclosure of the smaller root: P(lower) > 0 > P(upper) with
 * both below the vertex, by exact bisection. */
inline S0Enclosure s0(int n, const Rational &tol = default_s0_tol())
{
	if (n < 5)
		throw error("s0: n must be >= 5 (got " + std::to_string(n) + ")");
	if (tol.sign() <= 0)
		throw error("s0: tol must be > 0");
	const Rational N(n);
	Rational lo = 0, hi = N * N / (2 * N * N + 8 * N - 8);
	const Rational vertex = (2 * N * N + 8 * N - 8) / (8 * (N - 1));
	// P(hi) = 4(n-1)hi^2 > 0 here, so widen towards the vertex, where P < 0.
	while (s0_polynomial(n, hi).sign() >= 0) {
		lo = hi;
		hi = (hi + vertex) / 2;
	}
	while (hi - lo > tol) {
		Rational mid = (lo + hi) / 2;
		if (s0_polynomial(n, mid).sign() > 0)
			lo = mid;
		else
			hi = mid;
	}
	return {lo, hi};
}

/* -1 if s < s0, +1 if s > s0; throws inside the enclosure. */
inline int compare_with_s0(int n, const Rational &s, const Rational &tol = default_s0_tol())
{
	auto e = s0(n, tol);
	if (s <= e.lower)
		return -1;
	if (s >= e.upper)
		return 1;
	throw undecidable_at_precision("s = " + s.str() + " lies inside the s0 enclosure [" + e.lower.str() + ", " +
	                               e.upper.str() + "] for n = " + std::to_string(n));
}

/* ---- closed-form regions ---- */

namespace detail {

struct Terms {
	Rational N, s, a, d;
	Terms(const ProblemParams &p) : N(p.n), s(p.s), a(p.alpha), d(Rational(p.n) - 2 * p.s) {}
	Rational energy() const { return Rational(4) / d; }
	Rational distributional() const { return (N + 2 * s) / d; }
	Rational sobolev_lower() const { return 2 * s / d; }
	// (4s + 4 - n/(n-1))/(n-2s)
	Rational better_cap() const { return (4 * s + 4 - N / (N - 1)) / d; }
	// (2s + 4 - n/(n-1))/(n-4s), +inf once n - 4s <= 0
	ExtRational holder_cap() const { return over_positive(2 * s + 4 - N / (N - 1), N - 4 * s); }
	// (2 + 4s(1-1/n))/(n-2s)
	Rational rogers_cap() const { return (2 + 4 * s * (1 - 1 / N)) / d; }
};

inline bool below(const Rational &a, const ExtRational &cap) { return ExtRational(a) < cap; }

} // namespace detail

/* Evaluates the displayed conditions verbatim. Only s and alpha ranges
 * that make sense for the formulas are required: 0 <= s < n/2, n >= 2. */
inline bool predicate_holds(PredicateId id, const ProblemParams &p, const Rational &tol = default_s0_tol())
{
	const int n = p.n;
	if (n < 2 || p.s.sign() < 0 || p.s >= Rational(n, 2))
		return false;
	const detail::Terms t(p);
	const Rational &s = t.s, &a = t.a;
	const bool unit_s = s.sign() > 0 && s < 1;
	switch (id) {
	case PredicateId::Thm11:
		if (!(n >= 3 && n <= 5 && unit_s))
			return false;
		return max(Rational(1), t.sobolev_lower()) <= a && a < min(min(t.energy(), t.distributional()), t.better_cap());
	case PredicateId::Thm12: {
		if (n < 3 || !unit_s)
			return false;
		ExtRational cap = min(ExtRational(Rational(1)), t.holder_cap());
		if (n >= 4)
			cap = min(cap, ExtRational(t.energy()));
		return t.sobolev_lower() < a && detail::below(a, cap);
	}
	case PredicateId::Thm15:
		if (a != t.distributional())
			return false;
		return (n == 2 && unit_s) || (n == 3 && Rational(1, 4) < s && s < Rational(1, 2));
	case PredicateId::Thm16:
		if (a != t.energy() || !(s < 1))
			return false;
		if (n == 3)
			return Rational(1, 2) < s;
		if (n == 4)
			return Rational(1, 3) < s;
		if (n >= 5)
			return s.sign() > 0 && compare_with_s0(n, s, tol) > 0;
		return false;
	case PredicateId::Kato:
		return a.sign() > 0 && a < min(t.energy(), (2 + 2 * s) / t.d);
	case PredicateId::FurioliTerraneo:
		if (n < 3)
			return false;
		return max(Rational(1), t.sobolev_lower()) < a &&
		       a < min(min((2 + 4 * s) / t.d, t.energy()), min(t.distributional(), (t.N + 2 - 2 * s) / t.d));
	case PredicateId::Rogers:
		if (n < 3)
			return false;
		return (2 + 2 * s) / t.d <= a && a < min(t.rogers_cap(), t.energy());
	case PredicateId::WinTsutsumiSub:
		if (n != 3 || !(Rational(1, 2) < s && s < 1))
			return false;
		return max(t.rogers_cap(), (t.N + 2 - 2 * s) / t.d) <= a && a < min(t.energy(), t.distributional());
	case PredicateId::WinTsutsumiCrit:
		if (a != t.energy())
			return false;
		if (n == 3)
			return Rational(1, 2) < s && s < 1;
		return (n == 4 || n == 5) && Rational(1, 2) <= s && s < 1;
	case PredicateId::CazenaveCrit:
		return n >= 3 && 1 <= s && a == min(t.distributional(), t.energy());
	case PredicateId::OpenSub: {
		if (!(s < 1) || n < 3)
			return false;
		if (n <= 4) {
			ExtRational lo = min(ExtRational(t.better_cap()), t.holder_cap());
			if (lo <= ExtRational(a) && a < min(t.energy(), t.distributional()))
				return true;
		} else {
			if (ExtRational(a) >= t.holder_cap() && a < t.energy())
				return true;
		}
		return s.is_zero() && Rational(2, n) <= a && a < (4 - t.N / (t.N - 1)) / t.N;
	}
	default: // OpenCrit
		if (n == 2)
			return a == 1 && s.is_zero();
		if (n == 3)
			return a == t.distributional() && ((s <= Rational(1, 4)) || s == Rational(1, 2));
		if (n == 4)
			return a == t.energy() && s <= Rational(1, 3);
		return a == t.energy() && (s.is_zero() || compare_with_s0(n, s, tol) < 0);
	}
}

/* Theorem predicates only. */
inline bool theorem_predicate(PredicateId id, const ProblemParams &p, const Rational &tol = default_s0_tol())
{
	if (!is_theorem(id))
		throw error(std::string(to_string(id)) + " is not a theorem predicate");
	return predicate_holds(id, p, tol);
}

inline bool literature_predicate(PredicateId id, const ProblemParams &p)
{
	if (is_theorem(id))
		throw error(std::string(to_string(id)) + " is not a literature predicate");
	return predicate_holds(id, p);
}

/* ---- inequality chains ---- */

enum class ChainKind : std::uint8_t { BetterRegularity, HolderBetter };

inline std::string_view to_string(ChainKind k) { return k == ChainKind::BetterRegularity ? "better-regularity" : "holder-better"; }

/* Terms of the chain t0 < t1 < t2 at (n, s). */
inline std::array<ExtRational, 3> chain_terms(ChainKind k, int n, const Rational &s)
{
	const Rational N(n), d = N - 2 * s;
	if (k == ChainKind::BetterRegularity)
		return {ExtRational((2 + (N - 1) * 4 * s / (3 * N - 4)) / d), ExtRational((2 + 8 * s * (1 - 1 / N)) / d),
		        ExtRational((4 * s + 4 - N / (N - 1)) / d)};
	return {ExtRational((2 * N * s + 3 * N - 2 * s - 4) / ((3 * N / 2 - 2) * d)),
	        over_positive(2 + 4 * s * (1 - 1 / N), d - 4 * s * (1 - 1 / N)),
	        over_positive(2 * s + 4 - N / (N - 1), N - 4 * s)};
}

/* The upper cap the theorem statement applies on top of the chain. */
inline Rational chain_cap(ChainKind k, int n, const Rational &s)
{
	Rational c = critical_alpha(n, s);
	return k == ChainKind::HolderBetter ? min(c, Rational(1)) : c;
}

struct ChainStep {
	bool holds = true;
	bool masked = false;
};

struct ChainSample {
	Rational s;
	std::array<ExtRational, 3> terms;
	Rational cap;
	std::array<ChainStep, 2> steps;
};

struct ChainReport {
	ChainKind kind = ChainKind::BetterRegularity;
	int n = 3;
	std::vector<ChainSample> samples;

	std::size_t failures() const
	{
		std::size_t k = 0;
		for (const auto &x : samples)
			for (const auto &st : x.steps)
				k += !st.holds;
		return k;
	}
	bool passed() const
	{
		for (const auto &x : samples)
			for (const auto &st : x.steps)
				if (!st.holds && !st.masked)
					return false;
		return true;
	}
};

/* A failed step t_i >= t_{i+1} is masked when the theorem's cap already
 * excludes every alpha between the two terms: cap <= t_{i+1}. */
inline ChainReport verify_chain(ChainKind kind, int n, const std::vector<Rational> &s_samples)
{
	if (kind == ChainKind::BetterRegularity && (n < 3 || n > 5))
		throw error("verify_chain: the better-regularity chain needs n in {3,4,5}");
	if (kind == ChainKind::HolderBetter && n < 3)
		throw error("verify_chain: the holder-better chain needs n >= 3");
	ChainReport rep;
	rep.kind = kind;
	rep.n = n;
	for (const auto &s : s_samples) {
		ChainSample x{s, chain_terms(kind, n, s), chain_cap(kind, n, s), {}};
		for (int i = 0; i < 2; ++i) {
			x.steps[i].holds = x.terms[i] < x.terms[i + 1];
			x.steps[i].masked = !x.steps[i].holds && ExtRational(x.cap) <= x.terms[i + 1];
		}
		rep.samples.push_back(std::move(x));
	}
	return rep;
}

/* 32 midpoints (2k-1)/64 of [0, 1]. */
inline std::vector<Rational> chain_samples()
{
	std::vector<Rational> out;
	for (int k = 1; k <= 32; ++k)
		out.emplace_back(2 * k - 1, 64);
	return out;
}

} // namespace uniq

#pragma once

#include "linear.hpp"

#include <string>
#include <vector>

namespace uniq {

/* Reciprocals of a time/space exponent pair: q_inv = 1/q, r_inv = 1/r. */
struct SpaceTimePair {
	Rational q_inv;
	Rational r_inv;

	bool well_formed() const
	{
		return q_inv.sign() >= 0 && q_inv <= 1 && r_inv.sign() >= 0 && r_inv <= Rational(1, 2);
	}

	friend bool operator==(const SpaceTimePair &, const SpaceTimePair &) = default;
};

enum class Mode : std::uint8_t { NonSharp, Sharp, NotAdmissible };

inline const char *to_string(Mode m)
{
	switch (m) {
	case Mode::NonSharp: return "non-sharp";
	case Mode::Sharp: return "sharp";
	default: return "not-admissible";
	}
}

struct AdmissibilityReport {
	Mode mode = Mode::NotAdmissible;
	std::vector<std::string> failed;
	bool besov_variant = false;
};

/* 1 <= q < inf, 2 <= r <= inf, 1/q < n(1/2 - 1/r); or (q, r) = (inf, 2).
 * The boundary 1/q = n(1/2 - 1/r) is rejected. */
inline bool is_acceptable(int n, const SpaceTimePair &p)
{
	if (!p.well_formed())
		return false;
	if (p.q_inv.is_zero())
		return p.r_inv == Rational(1, 2);
	return p.q_inv < Rational(n) * (Rational(1, 2) - p.r_inv);
}

namespace labels {

inline std::string acceptable(const std::string &pair, const std::string &what) { return "acceptable" + pair + ":" + what; }
inline std::string admissible(const std::string &pairs, const std::string &what) { return "admissible" + pairs + ":" + what; }

} // namespace labels

/* Point check of the inhomogeneous Strichartz exponent conditions for the
 * output pair gr = (gamma, rho) and the dual input pair qr = (q, r). */
inline AdmissibilityReport admissibility(int n, const SpaceTimePair &gr, const SpaceTimePair &qr, bool besov)
{
	AdmissibilityReport rep;
	rep.besov_variant = besov;
	auto &f = rep.failed;
	const Rational half(1, 2), hn(n, 2), nm(Rational(n, 2) - 1);

	if (!is_acceptable(n, gr))
		f.push_back("acceptability:(gamma,rho)");
	if (!is_acceptable(n, qr))
		f.push_back("acceptability:(q,r)");
	Rational sum = qr.q_inv + gr.q_inv;
	if (sum != hn * (Rational(1) - qr.r_inv - gr.r_inv))
		f.push_back("scaling");
	if (n == 2) {
		if (qr.r_inv.sign() <= 0)
			f.push_back("n=2:r<inf");
		if (gr.r_inv.sign() <= 0)
			f.push_back("n=2:rho<inf");
	}
	if (besov) {
		if (gr.q_inv > half)
			f.push_back("besov:gamma>=2");
		if (qr.q_inv > half)
			f.push_back("besov:q>=2");
	}

	std::vector<std::string> nonsharp, sharp;
	if (!(sum < 1))
		nonsharp.push_back("non-sharp:1/q+1/gamma<1");
	if (!(nm * qr.r_inv <= hn * gr.r_inv))
		nonsharp.push_back("non-sharp:(n/2-1)/r<=n/(2rho)");
	if (!(nm * gr.r_inv <= hn * qr.r_inv))
		nonsharp.push_back("non-sharp:(n/2-1)/rho<=n/(2r)");
	if (sum != 1)
		sharp.push_back("sharp:1/q+1/gamma=1");
	if (!(nm * qr.r_inv < hn * gr.r_inv))
		sharp.push_back("sharp:(n/2-1)/r<n/(2rho)");
	if (!(nm * gr.r_inv < hn * qr.r_inv))
		sharp.push_back("sharp:(n/2-1)/rho<n/(2r)");
	if (!(qr.r_inv <= qr.q_inv))
		sharp.push_back("sharp:1/r<=1/q");
	if (!(gr.r_inv <= gr.q_inv))
		sharp.push_back("sharp:1/rho<=1/gamma");

	if (f.empty() && nonsharp.empty()) {
		rep.mode = Mode::NonSharp;
		return rep;
	}
	if (f.empty() && sharp.empty()) {
		rep.mode = Mode::Sharp;
		return rep;
	}
	rep.mode = Mode::NotAdmissible;
	if (sum < 1)
		f.insert(f.end(), nonsharp.begin(), nonsharp.end());
	else if (sum == 1)
		f.insert(f.end(), sharp.begin(), sharp.end());
	else
		f.push_back("1/q+1/gamma<=1");
	return rep;
}

/* A pair whose reciprocals are affine expressions, so scenario builders can
 * plug in pinned or derived exponents. `name` appears in labels. */
struct PairSlot {
	LinExpr time_inv;
	LinExpr space_inv;
	std::string name;
};

inline PairSlot slot(Var time_inv, Var space_inv, std::string name) { return {time_inv, space_inv, std::move(name)}; }

/* Acceptability, finite-q branch: 0 < 1/q <= 1, 0 <= 1/r <= 1/2,
 * 1/q < n(1/2 - 1/r). The (inf, 2) endpoint is a separate disjunct and is
 * not part of the conjunctive fragment. */
inline std::vector<Constraint> acceptability_constraints(int n, const PairSlot &p)
{
	const std::string tag = "(" + p.name + ")";
	const Rational half(1, 2);
	return {
		lt(0, p.time_inv, labels::acceptable(tag, "time exponent finite")),
		le(p.time_inv, 1, labels::acceptable(tag, "time exponent >= 1")),
		le(0, p.space_inv, labels::acceptable(tag, "space exponent <= inf")),
		le(p.space_inv, half, labels::acceptable(tag, "space exponent >= 2")),
		lt(p.time_inv, Rational(n) * (LinExpr(half) - p.space_inv), labels::acceptable(tag, "1/q < n(1/2-1/r)")),
	};
}

/* Exponent conditions tying output pair gr and input pair qr, in the given
 * mode, without the acceptability conditions. */
inline std::vector<Constraint> estimate_constraints(int n, bool besov, Mode mode, const PairSlot &gr, const PairSlot &qr)
{
	const std::string tag = "(" + gr.name + ";" + qr.name + ")";
	const Rational half(1, 2), hn(n, 2), nm(Rational(n, 2) - 1);
	std::vector<Constraint> out;
	LinExpr sum = qr.time_inv + gr.time_inv;
	out.push_back(eq(sum, hn * (LinExpr(1) - qr.space_inv - gr.space_inv), labels::admissible(tag, "scaling")));
	if (mode == Mode::NonSharp) {
		out.push_back(lt(sum, 1, labels::admissible(tag, "non-sharp 1/q+1/gamma<1")));
		out.push_back(le(nm * qr.space_inv, hn * gr.space_inv, labels::admissible(tag, "non-sharp (n/2-1)/r<=n/(2rho)")));
		out.push_back(le(nm * gr.space_inv, hn * qr.space_inv, labels::admissible(tag, "non-sharp (n/2-1)/rho<=n/(2r)")));
	} else if (mode == Mode::Sharp) {
		out.push_back(eq(sum, 1, labels::admissible(tag, "sharp 1/q+1/gamma=1")));
		out.push_back(lt(nm * qr.space_inv, hn * gr.space_inv, labels::admissible(tag, "sharp (n/2-1)/r<n/(2rho)")));
		out.push_back(lt(nm * gr.space_inv, hn * qr.space_inv, labels::admissible(tag, "sharp (n/2-1)/rho<n/(2r)")));
		out.push_back(le(qr.space_inv, qr.time_inv, labels::admissible(tag, "sharp 1/r<=1/q")));
		out.push_back(le(gr.space_inv, gr.time_inv, labels::admissible(tag, "sharp 1/rho<=1/gamma")));
	} else {
		throw error("estimate_constraints: mode must be non-sharp or sharp");
	}
	if (n == 2) {
		out.push_back(lt(0, qr.space_inv, labels::admissible(tag, "n=2 r<inf")));
		out.push_back(lt(0, gr.space_inv, labels::admissible(tag, "n=2 rho<inf")));
	}
	if (besov) {
		out.push_back(le(gr.time_inv, half, "besov" + tag + ":gamma>=2"));
		out.push_back(le(qr.time_inv, half, "besov" + tag + ":q>=2"));
	}
	return out;
}

/* Conjunctive fragment over {gamma_inv, rho_inv, q_inv, r_inv}: both pairs
 * acceptable (finite-q branch) and the estimate conditions of `mode`. */
inline ConstraintSystem admissibility_fragment(int n, bool besov, Mode mode)
{
	if (n < 2)
		throw error("admissibility_fragment: n must be >= 2");
	ConstraintSystem s({Var::gamma_inv, Var::rho_inv, Var::q_inv, Var::r_inv});
	PairSlot gr = slot(Var::gamma_inv, Var::rho_inv, "gamma,rho"), qr = slot(Var::q_inv, Var::r_inv, "q,r");
	for (auto &c : acceptability_constraints(n, gr))
		s.add(std::move(c));
	for (auto &c : acceptability_constraints(n, qr))
		s.add(std::move(c));
	for (auto &c : estimate_constraints(n, besov, mode, gr, qr))
		s.add(std::move(c));
	return s;
}

} // namespace uniq

#pragma once

#include "rational.hpp"

#include <string>

namespace uniq {

/* Dimension n, regularity s, nonlinearity power alpha. */
struct ProblemParams {
	int n = 3;
	Rational s;
	Rational alpha;

	/* 0 < s < n/2, alpha > 0, n >= 2. */
	void validate() const
	{
		if (n < 2)
			throw error("n must be >= 2 (got " + std::to_string(n) + ")");
		if (s.sign() <= 0 || s >= Rational(n, 2))
			throw error("s must satisfy 0 < s < n/2 (got " + s.str() + ")");
		if (alpha.sign() <= 0)
			throw error("alpha must be > 0 (got " + alpha.str() + ")");
	}

	std::string str() const { return "(n=" + std::to_string(n) + ", s=" + s.str() + ", alpha=" + alpha.str() + ")"; }

	friend bool operator==(const ProblemParams &, const ProblemParams &) = default;
};

/* 4/(n-2s) */
inline Rational energy_critical(int n, const Rational &s) { return Rational(4) / (Rational(n) - 2 * s); }

/* (n+2s)/(n-2s) */
inline Rational distributional_critical(int n, const Rational &s) { return (Rational(n) + 2 * s) / (Rational(n) - 2 * s); }

/* min of the two: the critical exponent proper. */
inline Rational critical_alpha(int n, const Rational &s) { return min(energy_critical(n, s), distributional_critical(n, s)); }

} // namespace uniq

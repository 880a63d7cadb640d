#pragma once

// Independent feasibility oracle for small systems. Shares nothing with the
// elimination engine beyond the input type.
//
// Strict rows get a common slack t:  a.x + c + t <= 0,  non-strict rows stay
// a.x + c <= 0, plus t <= 1 and the box |x_i| <= M. The system is feasible
// iff max t > 0, and the max is attained at a vertex: d+1 tight rows. All
// vertices are enumerated with fraction-free elimination in 128-bit ints.

#include "../linear.hpp"

#include <cstdint>
#include <numeric>
#include <vector>

namespace uniq::audit {

namespace detail {

using i128 = __int128;

struct IntRow {
	std::vector<i128> a;  // d coefficients then the t coefficient
	i128 c;               // row reads a.z + c <= 0
};

inline i128 abs128(i128 x) { return x < 0 ? -x : x; }

/* Scale a rational row to integers. */
inline IntRow integer_row(const LinExpr &e, const std::vector<Var> &vars, bool strict)
{
	mpz_class l = e.constant().denominator();
	for (const auto &[v, a] : e.terms())
		l = lcm(l, a.denominator());
	auto conv = [&](const Rational &q) -> i128 {
		mpz_class z = q.numerator() * (l / q.denominator());
		if (!z.fits_slong_p())
			throw error("vertex oracle: coefficient too large");
		return z.get_si();
	};
	IntRow r;
	for (Var v : vars)
		r.a.push_back(conv(e.coeff(v)));
	r.a.push_back(strict ? 1 : 0);
	r.c = conv(e.constant());
	return r;
}

/* Solve the square system rows[idx] tight (a.z = -c) by Bareiss. Returns false
 * if singular; otherwise z_k = num[k] / den with den > 0. */
inline bool solve_tight(const std::vector<IntRow> &rows, const std::vector<std::size_t> &idx,
                        std::vector<i128> &num, i128 &den)
{
	std::size_t m = idx.size();
	std::vector<std::vector<i128>> A(m, std::vector<i128>(m + 1));
	for (std::size_t i = 0; i < m; ++i) {
		for (std::size_t j = 0; j < m; ++j)
			A[i][j] = rows[idx[i]].a[j];
		A[i][m] = -rows[idx[i]].c;
	}
	i128 prev = 1;
	for (std::size_t k = 0; k < m; ++k) {
		std::size_t p = k;
		while (p < m && A[p][k] == 0)
			++p;
		if (p == m)
			return false;
		std::swap(A[p], A[k]);
		for (std::size_t i = k + 1; i < m; ++i) {
			for (std::size_t j = k + 1; j <= m; ++j)
				A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev;
			A[i][k] = 0;
		}
		prev = A[k][k];
	}
	// back substitution over the common denominator det = A[m-1][m-1]
	i128 det = A[m - 1][m - 1];
	num.assign(m, 0);
	for (std::size_t k = m; k-- > 0;) {
		i128 acc = A[k][m] * det;
		for (std::size_t j = k + 1; j < m; ++j)
			acc -= A[k][j] * num[j];
		if (acc % A[k][k] != 0)
			throw error("vertex oracle: inexact back substitution");
		num[k] = acc / A[k][k];
	}
	den = det;
	if (den < 0) {
		den = -den;
		for (auto &x : num)
			x = -x;
	}
	return true;
}

} // namespace detail

inline constexpr long oracle_box = 1000000;

/* Feasibility of s by vertex enumeration. Intended for <= 4 variables and
 * small integer-like coefficients. */
inline bool vertex_feasible(const ConstraintSystem &s)
{
	using detail::i128;
	const auto &vars = s.variables();
	std::size_t d = vars.size();
	std::vector<detail::IntRow> rows;
	for (const auto &c : s.constraints()) {
		if (c.rel == Rel::eq) {
			rows.push_back(detail::integer_row(c.expr, vars, false));
			rows.push_back(detail::integer_row(-c.expr, vars, false));
		} else {
			rows.push_back(detail::integer_row(c.expr, vars, c.rel == Rel::lt));
		}
	}
	std::size_t ncons = rows.size();
	{
		detail::IntRow cap;
		cap.a.assign(d + 1, 0);
		cap.a[d] = 1;
		cap.c = -1;
		rows.push_back(cap);
	}
	for (std::size_t i = 0; i < d; ++i)
		for (int sg : {1, -1}) {
			detail::IntRow b;
			b.a.assign(d + 1, 0);
			b.a[i] = sg;
			b.c = -oracle_box;
			rows.push_back(b);
		}
	(void)ncons;

	std::size_t m = d + 1;
	std::vector<std::size_t> idx(m);
	std::iota(idx.begin(), idx.end(), 0);
	std::vector<i128> num;
	i128 den = 1;
	bool any_vertex = false;
	bool positive = false;
	for (;;) {
		if (detail::solve_tight(rows, idx, num, den)) {
			bool ok = true;
			for (const auto &r : rows) {
				i128 acc = r.c * den;
				for (std::size_t j = 0; j < m; ++j)
					acc += r.a[j] * num[j];
				if (acc > 0) {
					ok = false;
					break;
				}
			}
			if (ok) {
				any_vertex = true;
				if (num[d] > 0) {
					positive = true;
					break;
				}
			}
		}
		// next combination
		std::size_t k = m;
		while (k-- > 0)
			if (idx[k] != rows.size() - m + k)
				break;
		if (k == static_cast<std::size_t>(-1))
			break;
		++idx[k];
		for (std::size_t j = k + 1; j < m; ++j)
			idx[j] = idx[j - 1] + 1;
	}
	(void)any_vertex;
	return positive;
}

} // namespace uniq::audit

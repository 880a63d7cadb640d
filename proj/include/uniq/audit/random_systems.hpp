#pragma once

#include "../linear.hpp"

#include <random>
#include <string>

namespace uniq::audit {

struct RandomSystemSpec {
	std::size_t max_vars = 4;
	std::size_t max_constraints = 10;
	int coeff_bound = 4;        // numerators in [-bound, bound]
	int max_denominator = 2;    // coefficients k/q with q in [1, max_denominator]
	double equality_rate = 0.1;
	double zero_rate = 0.3;     // chance a coefficient is dropped
};

inline const std::vector<Var> &random_var_pool()
{
	static const std::vector<Var> pool = {Var::sigma, Var::gamma_inv, Var::rho_inv, Var::q_inv};
	return pool;
}

/* Random rational coefficient with |value| <= coeff_bound. */
template <class Rng>
Rational random_coeff(Rng &rng, const RandomSystemSpec &spec)
{
	std::uniform_int_distribution<int> den(1, spec.max_denominator);
	int q = den(rng);
	std::uniform_int_distribution<int> num(-spec.coeff_bound * q, spec.coeff_bound * q);
	return Rational(num(rng), q);
}

template <class Rng>
ConstraintSystem random_system(Rng &rng, const RandomSystemSpec &spec = {})
{
	std::uniform_int_distribution<std::size_t> nv(1, spec.max_vars), nc(1, spec.max_constraints);
	std::uniform_real_distribution<double> u(0.0, 1.0);
	std::size_t d = nv(rng), m = nc(rng);
	std::vector<Var> vars(random_var_pool().begin(), random_var_pool().begin() + static_cast<long>(d));
	ConstraintSystem s(vars);
	for (std::size_t k = 0; k < m; ++k) {
		LinExpr e = random_coeff(rng, spec);
		for (Var v : vars)
			if (u(rng) >= spec.zero_rate)
				e += random_coeff(rng, spec) * v;
		double pick = u(rng);
		Rel rel = pick < spec.equality_rate ? Rel::eq : pick < 0.5 + spec.equality_rate / 2 ? Rel::lt : Rel::le;
		s.add({e, rel, "c" + std::to_string(k)});
	}
	return s;
}

} // namespace uniq::audit

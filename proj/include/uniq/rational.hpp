#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace uniq {

struct error : std::runtime_error {
	using std::runtime_error::runtime_error;
};

struct parse_error : error {
	using error::error;
};

struct division_by_zero : error {
	division_by_zero() : error("division by zero") {}
};

/* Exact fraction num/den with den > 0 and gcd(|num|, den) = 1. */
class Rational {
	mpq_class v_;

	explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

public:
	Rational() : v_(0) {}
	Rational(int x) : v_(x) {}
	Rational(long x) : v_(x) {}
	Rational(long long x) : v_(mpz_class(std::to_string(x))) {}
	Rational(long num, long den)
	{
		if (den == 0)
			throw division_by_zero();
		v_ = mpq_class(mpz_class(num), mpz_class(den));
		v_.canonicalize();
	}

	static Rational from_mpq(const mpq_class &q) { return Rational(q); }
	const mpq_class &mpq() const { return v_; }

	mpz_class numerator() const { return v_.get_num(); }
	mpz_class denominator() const { return v_.get_den(); }

	int sign() const { return sgn(v_); }
	bool is_zero() const { return sign() == 0; }
	bool is_integer() const { return v_.get_den() == 1; }

	Rational operator-() const { return Rational(mpq_class(-v_)); }

	friend Rational operator+(const Rational &a, const Rational &b) { return Rational(mpq_class(a.v_ + b.v_)); }
	friend Rational operator-(const Rational &a, const Rational &b) { return Rational(mpq_class(a.v_ - b.v_)); }
	friend Rational operator*(const Rational &a, const Rational &b) { return Rational(mpq_class(a.v_ * b.v_)); }
	friend Rational operator/(const Rational &a, const Rational &b)
	{
		if (b.is_zero())
			throw division_by_zero();
		return Rational(mpq_class(a.v_ / b.v_));
	}

	Rational &operator+=(const Rational &o) { v_ += o.v_; return *this; }
	Rational &operator-=(const Rational &o) { v_ -= o.v_; return *this; }
	Rational &operator*=(const Rational &o) { v_ *= o.v_; return *this; }
	Rational &operator/=(const Rational &o)
	{
		if (o.is_zero())
			throw division_by_zero();
		v_ /= o.v_;
		return *this;
	}

	friend bool operator==(const Rational &a, const Rational &b) { return a.v_ == b.v_; }
	friend std::strong_ordering operator<=>(const Rational &a, const Rational &b)
	{
		int c = cmp(a.v_, b.v_);
		return c < 0 ? std::strong_ordering::less
		     : c > 0 ? std::strong_ordering::greater
		             : std::strong_ordering::equal;
	}

	Rational abs() const { return sign() < 0 ? -*this : *this; }
	Rational reciprocal() const { return Rational(1) / *this; }

	mpz_class floor() const
	{
		mpz_class r;
		mpz_fdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
		return r;
	}
	mpz_class ceil() const
	{
		mpz_class r;
		mpz_cdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
		return r;
	}

	/* "p/q", or "p" when q = 1; a leading '-' only for negative values. */
	std::string str() const { return v_.get_str(); }

	/* Decimal rendering rounded half away from zero to `digits` places.
	 * Display only; never parsed back into the core. */
	std::string decimal(unsigned digits) const
	{
		mpz_class scale;
		mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
		mpq_class scaled = mpq_class(::abs(v_)) * scale + mpq_class(1, 2);
		mpz_class n;
		mpz_fdiv_q(n.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
		std::string s = n.get_str();
		if (digits > 0) {
			if (s.size() <= digits)
				s.insert(0, digits + 1 - s.size(), '0');
			s.insert(s.size() - digits, ".");
		}
		if (sign() < 0 && n != 0)
			s.insert(0, "-");
		return s;
	}

	/* Accepts "p/q", integers, and finite decimals with optional exponent
	 * ("-0.125", "1e-6", "2.5E3"). */
	static Rational parse(std::string_view text);
	static std::optional<Rational> try_parse(std::string_view text) noexcept;

	friend std::ostream &operator<<(std::ostream &os, const Rational &r) { return os << r.str(); }
};

namespace detail {

inline bool all_digits(std::string_view s)
{
	if (s.empty())
		return false;
	for (char c : s)
		if (c < '0' || c > '9')
			return false;
	return true;
}

inline mpz_class to_mpz(std::string_view digits)
{
	return mpz_class(std::string(digits), 10);
}

} // namespace detail

inline Rational Rational::parse(std::string_view text)
{
	auto fail = [&]() -> parse_error {
		return parse_error("malformed rational '" + std::string(text) + "'");
	};
	std::string_view t = text;
	while (!t.empty() && (t.front() == ' ' || t.front() == '\t'))
		t.remove_prefix(1);
	while (!t.empty() && (t.back() == ' ' || t.back() == '\t'))
		t.remove_suffix(1);
	bool neg = false;
	if (!t.empty() && (t.front() == '+' || t.front() == '-')) {
		neg = t.front() == '-';
		t.remove_prefix(1);
	}
	if (t.empty())
		throw fail();

	mpq_class value;
	if (auto slash = t.find('/'); slash != std::string_view::npos) {
		auto num = t.substr(0, slash), den = t.substr(slash + 1);
		if (!detail::all_digits(num) || !detail::all_digits(den))
			throw fail();
		mpz_class d = detail::to_mpz(den);
		if (d == 0)
			throw division_by_zero();
		value = mpq_class(detail::to_mpz(num), d);
	} else {
		std::string_view mant = t, expo;
		if (auto e = t.find_first_of("eE"); e != std::string_view::npos) {
			mant = t.substr(0, e);
			expo = t.substr(e + 1);
			if (expo.empty())
				throw fail();
		}
		std::string_view ip = mant, fp;
		if (auto dot = mant.find('.'); dot != std::string_view::npos) {
			ip = mant.substr(0, dot);
			fp = mant.substr(dot + 1);
		}
		if (ip.empty() && fp.empty())
			throw fail();
		if ((!ip.empty() && !detail::all_digits(ip)) || (!fp.empty() && !detail::all_digits(fp)))
			throw fail();
		mpz_class digits = detail::to_mpz(std::string(ip.empty() ? "0" : ip) + std::string(fp));
		long exp10 = -static_cast<long>(fp.size());
		if (!expo.empty()) {
			bool eneg = false;
			if (expo.front() == '+' || expo.front() == '-') {
				eneg = expo.front() == '-';
				expo.remove_prefix(1);
			}
			if (!detail::all_digits(expo) || expo.size() > 6)
				throw fail();
			long e = std::stol(std::string(expo));
			exp10 += eneg ? -e : e;
		}
		mpz_class p;
		mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
		value = exp10 < 0 ? mpq_class(digits, p) : mpq_class(digits * p);
	}
	value.canonicalize();
	if (neg)
		value = -value;
	return Rational(std::move(value));
}

inline std::optional<Rational> Rational::try_parse(std::string_view text) noexcept
{
	try {
		return parse(text);
	} catch (...) {
		return std::nullopt;
	}
}

inline Rational min(const Rational &a, const Rational &b) { return b < a ? b : a; }
inline Rational max(const Rational &a, const Rational &b) { return a < b ? b : a; }

/* A rational, or one of the two infinities. Infinities only appear as
 * interval endpoints and vacuous bounds; arithmetic is not defined on them. */
class ExtRational {
public:
	enum class Kind : std::uint8_t { neg_inf, finite, pos_inf };

private:
	Kind kind_ = Kind::finite;
	Rational v_;

	explicit ExtRational(Kind k) : kind_(k) {}

public:
	ExtRational() = default;
	ExtRational(Rational v) : v_(std::move(v)) {}
	ExtRational(int v) : v_(v) {}

	static ExtRational pos_inf() { return ExtRational(Kind::pos_inf); }
	static ExtRational neg_inf() { return ExtRational(Kind::neg_inf); }

	Kind kind() const { return kind_; }
	bool is_finite() const { return kind_ == Kind::finite; }
	bool is_pos_inf() const { return kind_ == Kind::pos_inf; }
	bool is_neg_inf() const { return kind_ == Kind::neg_inf; }

	const Rational &value() const
	{
		if (!is_finite())
			throw error("value() of an infinite ExtRational");
		return v_;
	}

	friend bool operator==(const ExtRational &a, const ExtRational &b)
	{
		return a.kind_ == b.kind_ && (a.kind_ != Kind::finite || a.v_ == b.v_);
	}
	friend std::strong_ordering operator<=>(const ExtRational &a, const ExtRational &b)
	{
		if (a.kind_ != b.kind_)
			return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
		if (a.kind_ != Kind::finite)
			return std::strong_ordering::equal;
		return a.v_ <=> b.v_;
	}

	std::string str() const
	{
		switch (kind_) {
		case Kind::neg_inf: return "-inf";
		case Kind::pos_inf: return "+inf";
		default: return v_.str();
		}
	}

	friend std::ostream &operator<<(std::ostream &os, const ExtRational &r) { return os << r.str(); }
};

inline ExtRational min(const ExtRational &a, const ExtRational &b) { return b < a ? b : a; }
inline ExtRational max(const ExtRational &a, const ExtRational &b) { return a < b ? b : a; }

/* x / d, or +inf when d <= 0. Used for min-terms whose bound only arises
 * after multiplying through by a positive denominator. */
inline ExtRational over_positive(const Rational &x, const Rational &d)
{
	if (d.sign() <= 0)
		return ExtRational::pos_inf();
	return x / d;
}

} // namespace uniq

#pragma once

#include "rational.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace uniq {

enum class Closedness : std::uint8_t { open, closed };

inline const char *to_string(Closedness c) { return c == Closedness::closed ? "closed" : "open"; }

/* Interval endpoint. An endpoint at +-inf is always open. */
struct Bound {
	ExtRational value;
	Closedness closedness = Closedness::open;

	Bound() : value(ExtRational::neg_inf()) {}
	Bound(ExtRational v, Closedness c) : value(std::move(v)), closedness(c)
	{
		if (!value.is_finite())
			closedness = Closedness::open;
	}

	static Bound closed(Rational v) { return {ExtRational(std::move(v)), Closedness::closed}; }
	static Bound open(Rational v) { return {ExtRational(std::move(v)), Closedness::open}; }
	static Bound neg_inf() { return {ExtRational::neg_inf(), Closedness::open}; }
	static Bound pos_inf() { return {ExtRational::pos_inf(), Closedness::open}; }

	bool is_closed() const { return closedness == Closedness::closed; }

	friend bool operator==(const Bound &, const Bound &) = default;
};

struct Interval {
	Bound lo = Bound::neg_inf();
	Bound hi = Bound::pos_inf();

	bool empty() const
	{
		if (lo.value < hi.value)
			return false;
		return !(lo.value == hi.value && lo.is_closed() && hi.is_closed());
	}

	bool contains(const Rational &x) const
	{
		ExtRational e(x);
		bool above = lo.is_closed() ? lo.value <= e : lo.value < e;
		bool below = hi.is_closed() ? e <= hi.value : e < hi.value;
		return above && below;
	}

	friend bool operator==(const Interval &, const Interval &) = default;
};

namespace detail {

/* Lower bounds ordered by the set they admit: a closed endpoint admits more
 * than an open one at the same value. */
inline bool lower_before(const Bound &a, const Bound &b)
{
	if (a.value != b.value)
		return a.value < b.value;
	return a.is_closed() && !b.is_closed();
}

/* Of two lower bounds, the one admitting fewer points. */
inline Bound tighter_lower(const Bound &a, const Bound &b)
{
	if (a.value != b.value)
		return a.value < b.value ? b : a;
	return a.is_closed() ? b : a;
}

inline Bound tighter_upper(const Bound &a, const Bound &b)
{
	if (a.value != b.value)
		return a.value < b.value ? a : b;
	return a.is_closed() ? b : a;
}

inline Bound looser_upper(const Bound &a, const Bound &b)
{
	if (a.value != b.value)
		return a.value < b.value ? b : a;
	return a.is_closed() ? a : b;
}

/* Does the interval ending at `hi` overlap or touch the one starting at `lo`
 * (with hi's interval starting no later)? */
inline bool joins(const Bound &hi, const Bound &lo)
{
	if (lo.value < hi.value)
		return true;
	if (lo.value == hi.value)
		return hi.is_closed() || lo.is_closed();
	return false;
}

} // namespace detail

/* Finite union of intervals in canonical form: every interval nonempty,
 * sorted ascending, pairwise disjoint and non-adjacent. */
class IntervalSet {
	std::vector<Interval> iv_;

public:
	IntervalSet() = default;
	explicit IntervalSet(std::vector<Interval> ivs) : iv_(std::move(ivs)) { canonicalize_in_place(); }
	IntervalSet(Interval i) : IntervalSet(std::vector<Interval>{std::move(i)}) {}

	static IntervalSet empty_set() { return {}; }
	static IntervalSet all() { return IntervalSet(Interval{}); }
	static IntervalSet point(const Rational &x) { return IntervalSet(Interval{Bound::closed(x), Bound::closed(x)}); }
	static IntervalSet make(Bound lo, Bound hi) { return IntervalSet(Interval{std::move(lo), std::move(hi)}); }
	static IntervalSet closed(const Rational &a, const Rational &b) { return make(Bound::closed(a), Bound::closed(b)); }
	static IntervalSet open(const Rational &a, const Rational &b) { return make(Bound::open(a), Bound::open(b)); }
	static IntervalSet closed_open(const Rational &a, const Rational &b) { return make(Bound::closed(a), Bound::open(b)); }
	static IntervalSet open_closed(const Rational &a, const Rational &b) { return make(Bound::open(a), Bound::closed(b)); }

	const std::vector<Interval> &intervals() const { return iv_; }
	bool empty() const { return iv_.empty(); }
	std::size_t size() const { return iv_.size(); }

	bool contains(const Rational &x) const
	{
		return std::any_of(iv_.begin(), iv_.end(), [&](const Interval &i) { return i.contains(x); });
	}

	IntervalSet canonicalized() const { return IntervalSet(iv_); }

	friend IntervalSet intersect(const IntervalSet &a, const IntervalSet &b)
	{
		std::vector<Interval> out;
		for (const auto &x : a.iv_)
			for (const auto &y : b.iv_) {
				Interval z{detail::tighter_lower(x.lo, y.lo), detail::tighter_upper(x.hi, y.hi)};
				if (!z.empty())
					out.push_back(std::move(z));
			}
		return IntervalSet(std::move(out));
	}

	friend IntervalSet unite(const IntervalSet &a, const IntervalSet &b)
	{
		std::vector<Interval> out = a.iv_;
		out.insert(out.end(), b.iv_.begin(), b.iv_.end());
		return IntervalSet(std::move(out));
	}

	friend bool operator==(const IntervalSet &, const IntervalSet &) = default;

	std::string str() const
	{
		if (iv_.empty())
			return "{}";
		std::string s;
		for (std::size_t k = 0; k < iv_.size(); ++k) {
			const auto &i = iv_[k];
			if (k)
				s += " U ";
			if (i.lo.value == i.hi.value) {
				s += "{" + i.lo.value.str() + "}";
				continue;
			}
			s += i.lo.is_closed() ? "[" : "(";
			s += i.lo.value.str() + ", " + i.hi.value.str();
			s += i.hi.is_closed() ? "]" : ")";
		}
		return s;
	}

	friend std::ostream &operator<<(std::ostream &os, const IntervalSet &s) { return os << s.str(); }

private:
	void canonicalize_in_place()
	{
		std::erase_if(iv_, [](const Interval &i) { return i.empty(); });
		std::sort(iv_.begin(), iv_.end(), [](const Interval &a, const Interval &b) {
			return detail::lower_before(a.lo, b.lo);
		});
		std::vector<Interval> merged;
		for (auto &i : iv_) {
			if (!merged.empty() && detail::joins(merged.back().hi, i.lo))
				merged.back().hi = detail::looser_upper(merged.back().hi, i.hi);
			else
				merged.push_back(std::move(i));
		}
		iv_ = std::move(merged);
	}
};

} // namespace uniq

#pragma once

#include <vector>

#include "satsched/rational.hpp"

namespace satsched {

struct Interval {
	Time lo;
	Time hi;

	Rational length() const { return hi - lo; }
	/// Positive-measure overlap; touching endpoints do not intersect.
	bool intersects(const Interval& o) const { return o.lo < hi && lo < o.hi; }
	bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }

	friend bool operator==(const Interval&, const Interval&) = default;
};

/// Sorted set of disjoint, non-touching intervals of positive length.
///
/// All set operations are measure-theoretic: endpoints carry no mass, so adjacent
/// pieces are merged and zero-length pieces are dropped.
class IntervalSet {
public:
	IntervalSet() = default;
	explicit IntervalSet(std::vector<Interval> pieces);

	void add(const Interval& iv);
	void add(const IntervalSet& other);

	const std::vector<Interval>& pieces() const { return pieces_; }
	bool empty() const { return pieces_.empty(); }

	Rational measure() const;
	Rational measure_within(const Interval& window) const;

	IntervalSet clipped(const Interval& window) const;
	IntervalSet intersected(const IntervalSet& other) const;
	IntervalSet minus(const IntervalSet& other) const;

	/// True when `t` lies in the interior or on the boundary of some piece.
	bool covers_point(const Time& t) const;
	/// True when the open interval (lo, hi) is entirely covered.
	bool covers(const Interval& iv) const;

	friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

private:
	std::vector<Interval> pieces_;
};

}  // namespace satsched

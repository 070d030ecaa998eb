#include "satsched/interval_set.hpp"

#include <algorithm>

namespace satsched {

IntervalSet::IntervalSet(std::vector<Interval> pieces) {
	for (auto& p : pieces) add(p);
}

void IntervalSet::add(const Interval& iv) {
	if (!(iv.lo < iv.hi)) return;
	// First piece whose end reaches iv.lo (touching counts, so pieces merge).
	auto first = std::lower_bound(pieces_.begin(), pieces_.end(), iv.lo,
	                              [](const Interval& p, const Time& t) { return p.hi < t; });
	auto last = first;
	Interval merged = iv;
	while (last != pieces_.end() && last->lo <= iv.hi) {
		merged.lo = min(merged.lo, last->lo);
		merged.hi = max(merged.hi, last->hi);
		++last;
	}
	first = pieces_.erase(first, last);
	pieces_.insert(first, merged);
}

void IntervalSet::add(const IntervalSet& other) {
	for (const auto& p : other.pieces_) add(p);
}

Rational IntervalSet::measure() const {
	Rational total;
	for (const auto& p : pieces_) total += p.length();
	return total;
}

Rational IntervalSet::measure_within(const Interval& window) const {
	Rational total;
	for (const auto& p : pieces_) {
		if (!p.intersects(window)) continue;
		total += min(p.hi, window.hi) - max(p.lo, window.lo);
	}
	return total;
}

IntervalSet IntervalSet::clipped(const Interval& window) const {
	IntervalSet out;
	for (const auto& p : pieces_)
		if (p.intersects(window)) out.pieces_.push_back({max(p.lo, window.lo), min(p.hi, window.hi)});
	return out;
}

IntervalSet IntervalSet::intersected(const IntervalSet& other) const {
	IntervalSet out;
	std::size_t i = 0, j = 0;
	while (i < pieces_.size() && j < other.pieces_.size()) {
		const auto& a = pieces_[i];
		const auto& b = other.pieces_[j];
		if (a.intersects(b)) out.pieces_.push_back({max(a.lo, b.lo), min(a.hi, b.hi)});
		if (a.hi < b.hi) ++i; else ++j;
	}
	return out;
}

IntervalSet IntervalSet::minus(const IntervalSet& other) const {
	IntervalSet out;
	std::size_t j = 0;
	for (const auto& a : pieces_) {
		Time cursor = a.lo;
		while (j < other.pieces_.size() && other.pieces_[j].hi <= cursor) ++j;
		std::size_t k = j;
		while (k < other.pieces_.size() && other.pieces_[k].lo < a.hi) {
			const auto& b = other.pieces_[k];
			if (cursor < b.lo) out.pieces_.push_back({cursor, b.lo});
			cursor = max(cursor, b.hi);
			++k;
		}
		if (cursor < a.hi) out.pieces_.push_back({cursor, a.hi});
	}
	return out;
}

bool IntervalSet::covers_point(const Time& t) const {
	auto it = std::lower_bound(pieces_.begin(), pieces_.end(), t,
	                           [](const Interval& p, const Time& x) { return p.hi < x; });
	return it != pieces_.end() && it->lo <= t;
}

bool IntervalSet::covers(const Interval& iv) const {
	auto it = std::lower_bound(pieces_.begin(), pieces_.end(), iv.lo,
	                           [](const Interval& p, const Time& x) { return p.hi < x; });
	return it != pieces_.end() && it->lo <= iv.lo && iv.hi <= it->hi;
}

}  // namespace satsched

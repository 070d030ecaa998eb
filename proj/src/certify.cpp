#include "satsched/certify.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>

#include "satsched/errors.hpp"

namespace satsched {

const char* to_string(SegmentClass cls) {
	switch (cls) {
		case SegmentClass::C: return "c";
		case SegmentClass::GE: return "ge";
		case SegmentClass::OE: return "oe";
		case SegmentClass::N: return "n";
	}
	return "?";
}

const char* to_string(CertificateKind kind) { return kind == CertificateKind::general ? "general" : "m2"; }

const char* to_string(AssignTag tag) {
	switch (tag) {
		case AssignTag::M1: return "M1";
		case AssignTag::M2: return "M2";
		case AssignTag::M3: return "M3";
		case AssignTag::N1: return "N1";
		case AssignTag::N2: return "N2";
	}
	return "?";
}

// ---------------------------------------------------------------------------
// Classification

std::optional<SegmentClass> Classification::class_over(std::size_t job, const Interval& iv) const {
	if (c[job].covers(iv)) return SegmentClass::C;
	if (ge[job].covers(iv)) return SegmentClass::GE;
	if (oe[job].covers(iv)) return SegmentClass::OE;
	if (n[job].covers(iv)) return SegmentClass::N;
	return std::nullopt;
}

Rational Classification::total(SegmentClass cls) const {
	const auto& sets = cls == SegmentClass::C ? c : cls == SegmentClass::GE ? ge : cls == SegmentClass::OE ? oe : n;
	Rational sum;
	for (const auto& s : sets) sum += s.measure();
	return sum;
}

Classification classify(const Instance& instance, const Schedule& gr, const Schedule& opt) {
	if (instance.profit_mode != ProfitMode::uniform) throw InputError("classification requires uniform profit mode");
	check_schedule(instance, gr);
	check_schedule(instance, opt);
	const auto gr_owned = owned_sets(instance, gr);
	const auto opt_owned = owned_sets(instance, opt);

	Classification out;
	const std::size_t n = instance.size();
	out.c.resize(n);
	out.ge.resize(n);
	out.oe.resize(n);
	out.n.resize(n);
	for (std::size_t i = 0; i < n; ++i) {
		IntervalSet whole;
		whole.add(instance.jobs[i].interval());
		out.c[i] = gr_owned[i].intersected(opt_owned[i]);
		out.ge[i] = gr_owned[i].minus(opt_owned[i]);
		out.oe[i] = opt_owned[i].minus(gr_owned[i]);
		IntervalSet either = gr_owned[i];
		either.add(opt_owned[i]);
		out.n[i] = whole.minus(either);

		std::vector<ClassifiedSegment> segs;
		const std::array<std::pair<const IntervalSet*, SegmentClass>, 4> parts{{{&out.c[i], SegmentClass::C},
		                                                                        {&out.ge[i], SegmentClass::GE},
		                                                                        {&out.oe[i], SegmentClass::OE},
		                                                                        {&out.n[i], SegmentClass::N}}};
		for (const auto& [set, cls] : parts)
			for (const auto& p : set->pieces()) segs.push_back({i, p, cls, gr.machine_of[i], opt.machine_of[i]});
		std::sort(segs.begin(), segs.end(),
		          [](const ClassifiedSegment& a, const ClassifiedSegment& b) { return a.span.lo < b.span.lo; });
		out.segments.insert(out.segments.end(), segs.begin(), segs.end());
	}
	return out;
}

// ---------------------------------------------------------------------------
// Cumulative measures and the h-map

Rational CumulativeMeasure::value_at(const Time& t) const {
	if (t <= origin_) return {};
	return support_.measure_within({origin_, t});
}

std::optional<Time> CumulativeMeasure::first_reach(const Rational& v) const {
	if (v.sign() <= 0) return origin_;
	Rational acc;
	for (const auto& p : support_.pieces()) {
		if (p.hi <= origin_) continue;
		const Time lo = max(p.lo, origin_);
		const Rational len = p.hi - lo;
		if (v <= acc + len) return lo + (v - acc);
		acc += len;
	}
	return std::nullopt;
}

CertifyContext::CertifyContext(const Instance& instance, const Schedule& gr, const Schedule& opt)
    : instance_(instance), gr_(gr), opt_(opt), classes_(classify(instance, gr, opt)) {
	const auto m = static_cast<std::size_t>(instance.machines);
	const std::size_t n = instance.size();
	owned_by_machine_.resize(m + 1);
	breaks_by_machine_.resize(m + 1);
	const auto owned = owned_sets(instance, gr);
	for (std::size_t i = 0; i < n; ++i) {
		const auto a = static_cast<std::size_t>(gr.machine_of[i]);
		for (const auto& p : owned[i].pieces()) {
			owned_by_machine_[a].push_back({p, i});
			breaks_by_machine_[a].push_back(p.lo);
			breaks_by_machine_[a].push_back(p.hi);
		}
		// Class changes inside an owned piece matter as much as owner changes.
		for (const auto* set : {&classes_.c[i], &classes_.ge[i]})
			for (const auto& p : set->pieces()) {
				breaks_by_machine_[a].push_back(p.lo);
				breaks_by_machine_[a].push_back(p.hi);
			}
	}
	for (std::size_t a = 1; a <= m; ++a) {
		std::sort(owned_by_machine_[a].begin(), owned_by_machine_[a].end(),
		          [](const OwnedPiece& x, const OwnedPiece& y) { return x.span.lo < y.span.lo; });
		auto& b = breaks_by_machine_[a];
		std::sort(b.begin(), b.end());
		b.erase(std::unique(b.begin(), b.end()), b.end());
	}

	// GR is online, so its placement order is the arrival order.
	prefix_cover_.resize(n);
	std::vector<IntervalSet> cover(m + 1);
	for (std::size_t k = 0; k < n; ++k) {
		cover[static_cast<std::size_t>(gr.machine_of[k])].add(instance.jobs[k].interval());
		prefix_cover_[k] = cover;
	}
}

const IntervalSet& CertifyContext::prefix_cover(MachineIndex machine, std::size_t placed) const {
	return prefix_cover_[placed][static_cast<std::size_t>(machine)];
}

std::optional<std::size_t> CertifyContext::owner_over(MachineIndex machine, std::size_t placed, const Interval& iv) const {
	for (const auto& piece : owned_by_machine_[static_cast<std::size_t>(machine)]) {
		if (piece.span.contains(iv)) {
			if (piece.job <= placed) return piece.job;
			return std::nullopt;
		}
		if (iv.lo < piece.span.lo) break;
	}
	return std::nullopt;
}

const std::vector<Time>& CertifyContext::owner_breaks(MachineIndex machine) const {
	return breaks_by_machine_[static_cast<std::size_t>(machine)];
}

CumulativeMeasure CertifyContext::oe_measure(std::size_t job) const {
	return {classes_.oe[job], instance_.jobs[job].release};
}

CumulativeMeasure CertifyContext::p_measure(MachineIndex machine, std::size_t placed, std::size_t source) const {
	const Job& j = instance_.jobs[source];
	IntervalSet support = prefix_cover(machine, placed).clipped(j.interval()).minus(classes_.n[source]);
	return {std::move(support), j.release};
}

Time h_map(const CertifyContext& ctx, MachineIndex machine, std::size_t placed, std::size_t source, const Time& t) {
	const Job& j = ctx.instance().jobs[source];
	if (t < j.release || j.deadline < t) throw InputError("h_map: point outside the source job's interval");
	if (placed < source) throw InputError("h_map: the source job must be placed no later than the placed job");
	const Rational e = ctx.oe_measure(source).value_at(t);
	const auto reached = ctx.p_measure(machine, placed, source).first_reach(e);
	if (!reached || *reached > j.deadline) {
		std::ostringstream msg;
		msg << "h-map has no solution on machine " << machine << " for job " << j.id << " at t=" << t
		    << " (oe measure " << e << ")";
		throw CertificateError(msg.str());
	}
	return *reached;
}

// ---------------------------------------------------------------------------
// Routine machinery

namespace {

/// Integer-valued step function over time, zero by default.
class StepCounter {
public:
	void add(const Interval& iv, int delta) {
		split_at(iv.lo);
		split_at(iv.hi);
		for (auto it = steps_.find(iv.lo); it != steps_.end() && it->first < iv.hi; ++it) it->second += delta;
	}

	int max_over(const Interval& iv) const {
		int best = value_at_start(iv.lo);
		for (auto it = steps_.upper_bound(iv.lo); it != steps_.end() && it->first < iv.hi; ++it)
			best = std::max(best, it->second);
		return best;
	}

	/// Points of `window` where the counter is positive.
	IntervalSet positive_within(const Interval& window) const {
		IntervalSet out;
		Time lo = window.lo;
		int v = value_at_start(window.lo);
		for (auto it = steps_.upper_bound(window.lo); it != steps_.end() && it->first < window.hi; ++it) {
			if (v > 0) out.add({lo, it->first});
			lo = it->first;
			v = it->second;
		}
		if (v > 0) out.add({lo, window.hi});
		return out;
	}

	void breaks_within(const Interval& iv, std::vector<Time>& out) const {
		for (auto it = steps_.upper_bound(iv.lo); it != steps_.end() && it->first < iv.hi; ++it) out.push_back(it->first);
	}

private:
	int value_at_start(const Time& t) const {
		auto it = steps_.upper_bound(t);
		if (it == steps_.begin()) return 0;
		return std::prev(it)->second;
	}

	void split_at(const Time& t) {
		if (steps_.count(t)) return;
		steps_.emplace(t, value_at_start(t));
	}

	std::map<Time, int> steps_;
};

struct Match {
	Interval src;
	Interval dst;
};

/// Pairs `src` (inside the support of `from`) with the part of `to` carrying the
/// same cumulative measure, split into translated pieces.
std::vector<Match> match_measure(const CumulativeMeasure& from, const CumulativeMeasure& to, const Interval& src,
                                 const std::string& what) {
	const Rational e0 = from.value_at(src.lo);
	const Rational e1 = e0 + src.length();
	std::vector<Match> out;
	Rational acc;
	for (const auto& p : to.support().pieces()) {
		const Rational next = acc + p.length();
		const Rational lo_e = max(acc, e0);
		const Rational hi_e = min(next, e1);
		if (lo_e < hi_e)
			out.push_back({{src.lo + (lo_e - e0), src.lo + (hi_e - e0)}, {p.lo + (lo_e - acc), p.lo + (hi_e - acc)}});
		acc = next;
		if (e1 <= acc) break;
	}
	if (acc < e1) throw CertificateError("h-map undefined (" + what + "): p-measure " + acc.str() + " < required " + e1.str());
	return out;
}

/// Splits every match where `cuts` fall strictly inside its destination.
std::vector<Match> split_dst(const std::vector<Match>& in, std::vector<Time> cuts) {
	std::sort(cuts.begin(), cuts.end());
	cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
	std::vector<Match> out;
	for (const auto& mt : in) {
		const Rational shift = mt.src.lo - mt.dst.lo;
		Time lo = mt.dst.lo;
		for (auto it = std::upper_bound(cuts.begin(), cuts.end(), mt.dst.lo); it != cuts.end() && *it < mt.dst.hi; ++it) {
			out.push_back({{lo + shift, *it + shift}, {lo, *it}});
			lo = *it;
		}
		out.push_back({{lo + shift, mt.dst.hi + shift}, {lo, mt.dst.hi}});
	}
	return out;
}

std::vector<Time> breaks_within(const std::vector<Time>& sorted, const Interval& iv) {
	std::vector<Time> out;
	for (auto it = std::upper_bound(sorted.begin(), sorted.end(), iv.lo); it != sorted.end() && *it < iv.hi; ++it)
		out.push_back(*it);
	return out;
}

Interval hull(const std::vector<Match>& ms, bool dst) {
	Interval h = dst ? ms.front().dst : ms.front().src;
	for (const auto& mt : ms) {
		const Interval& iv = dst ? mt.dst : mt.src;
		h.lo = min(h.lo, iv.lo);
		h.hi = max(h.hi, iv.hi);
	}
	return h;
}

std::string describe(const Instance& inst, std::size_t job, const Interval& iv) {
	std::ostringstream s;
	s << "job " << inst.jobs[job].id << " [" << iv.lo << ", " << iv.hi << "]";
	return s.str();
}

class RoutineBase {
protected:
	explicit RoutineBase(const CertifyContext& ctx)
	    : ctx_(ctx), m_(ctx.instance().machines),
	      counters_(5, std::vector<StepCounter>(static_cast<std::size_t>(m_) + 1)) {}

	StepCounter& counter(AssignTag tag, MachineIndex a) {
		return counters_[static_cast<std::size_t>(tag)][static_cast<std::size_t>(a)];
	}

	void record(CertificatePiece piece) {
		counter(piece.tag, piece.target_machine).add(piece.target, +1);
		pieces_.push_back(std::move(piece));
	}

	void drop_sources(const std::vector<std::size_t>& jobs) {
		std::vector<CertificatePiece> kept;
		for (auto& p : pieces_) {
			if (std::find(jobs.begin(), jobs.end(), p.source_job) != jobs.end())
				counter(p.tag, p.target_machine).add(p.target, -1);
			else
				kept.push_back(std::move(p));
		}
		pieces_ = std::move(kept);
	}

	SegmentClass target_class(std::size_t owner, const Interval& iv) const {
		const auto cls = ctx_.classification().class_over(owner, iv);
		if (!cls || (*cls != SegmentClass::C && *cls != SegmentClass::GE))
			throw CertificateError("target " + describe(ctx_.instance(), owner, iv) + " is not a p-interval");
		return *cls;
	}

	/// Counting inequality x + 2z + w >= x + y + z at point t among arrivals 0..placed.
	void counting_check(std::size_t placed, const Time& t) {
		const auto& cls = ctx_.classification();
		auto inside = [&t](const IntervalSet& set) {
			return std::any_of(set.pieces().begin(), set.pieces().end(),
			                   [&t](const Interval& p) { return p.lo < t && t < p.hi; });
		};
		long x = 0, y = 0, z = 0, w = 0;
		for (std::size_t i = 0; i <= placed; ++i) {
			if (inside(cls.c[i])) ++x;
			else if (inside(cls.oe[i])) ++y;
			else if (inside(cls.ge[i])) ++z;
		}
		for (MachineIndex a = 1; a <= m_; ++a)
			if (!ctx_.prefix_cover(a, placed).covers_point(t)) ++w;
		++stats_.counting_checks;
		if (x + 2 * z + w < x + y + z) ++stats_.counting_violations;
	}

	AssignmentCertificate finish(CertificateKind kind) {
		AssignmentCertificate cert;
		cert.kind = kind;
		std::sort(pieces_.begin(), pieces_.end(), [](const CertificatePiece& a, const CertificatePiece& b) {
			if (a.source_job != b.source_job) return a.source_job < b.source_job;
			if (a.source.lo != b.source.lo) return a.source.lo < b.source.lo;
			return static_cast<int>(a.tag) < static_cast<int>(b.tag);
		});
		const auto& cls = ctx_.classification();
		cert.summary.v_c = cls.total(SegmentClass::C);
		cert.summary.v_ge = cls.total(SegmentClass::GE);
		for (const auto& p : pieces_) {
			const Rational mass = p.source.length() * p.weight;
			if (kind == CertificateKind::general) {
				(p.target_class == SegmentClass::C ? cert.summary.v_oe : cert.summary.v_oe_prime) += mass;
			} else {
				(p.tag == AssignTag::N1 ? cert.summary.v_oe : cert.summary.v_oe_prime) += mass;
			}
		}
		cert.pieces = std::move(pieces_);
		cert.stats = stats_;
		return cert;
	}

	const CertifyContext& ctx_;
	int m_;
	std::vector<std::vector<StepCounter>> counters_;  // [tag][machine]
	std::vector<CertificatePiece> pieces_;
	RoutineStats stats_;
};

// ---------------------------------------------------------------------------
// General m

class GeneralRoutine : RoutineBase {
public:
	explicit GeneralRoutine(const CertifyContext& ctx) : RoutineBase(ctx) {}

	AssignmentCertificate run() {
		const auto& inst = ctx_.instance();
		for (std::size_t k = 0; k < inst.size(); ++k) {
			std::vector<std::size_t> family;
			for (std::size_t i = 0; i < k; ++i)
				if (inst.jobs[i].interval().intersects(inst.jobs[k].interval())) family.push_back(i);
			family.push_back(k);
			drop_sources(family);
			for (std::size_t job : family)
				for (const auto& piece : ctx_.classification().oe[job].pieces()) assign(k, job, piece);
		}
		return finish(CertificateKind::general);
	}

private:
	void assign(std::size_t placed, std::size_t job, const Interval& piece) {
		const auto oe = ctx_.oe_measure(job);
		++stats_.h_evaluations;
		const auto to_m1 = match_measure(oe, ctx_.p_measure(1, placed, job), piece, "h_1");

		std::vector<Time> cuts;
		const Interval dst_hull = hull(to_m1, true);
		for (MachineIndex b = 1; b <= m_; ++b) {
			for (const auto& t : breaks_within(ctx_.owner_breaks(b), dst_hull)) cuts.push_back(t);
			counter(AssignTag::M1, b).breaks_within(dst_hull, cuts);
			counter(AssignTag::M2, b).breaks_within(dst_hull, cuts);
		}

		for (const auto& mt : split_dst(to_m1, cuts)) {
			counting_check(placed, mt.dst.lo + (mt.dst.hi - mt.dst.lo) / Rational(2));
			if (try_direct(placed, job, mt)) {
				++stats_.direct_steps;
				continue;
			}
			++stats_.fallback_steps;
			fallback(placed, job, mt.src);
		}
	}

	/// An assignable p-piece at the h_1 image on any machine, lowest index first.
	bool try_direct(std::size_t placed, std::size_t job, const Match& mt) {
		for (MachineIndex b = 1; b <= m_; ++b) {
			const auto owner = ctx_.owner_over(b, placed, mt.dst);
			if (!owner) continue;
			const SegmentClass cls = target_class(*owner, mt.dst);
			const int used1 = counter(AssignTag::M1, b).max_over(mt.dst);
			const int used2 = counter(AssignTag::M2, b).max_over(mt.dst);
			std::optional<AssignTag> tag;
			if (cls == SegmentClass::C) {
				if (used1 == 0) tag = AssignTag::M1;
			} else if (used2 == 0) {
				tag = AssignTag::M2;
			} else if (used1 == 0) {
				tag = AssignTag::M1;
			}
			if (!tag) continue;
			record({job, mt.src, *owner, b, mt.dst, *tag, cls, Rational(1)});
			return true;
		}
		return false;
	}

	/// Some machine's h_a image carrying a p-piece with no M3 preimage.
	void fallback(std::size_t placed, std::size_t job, const Interval& src) {
		const auto oe = ctx_.oe_measure(job);
		std::vector<Interval> pending{src};
		for (MachineIndex a = 1; a <= m_ && !pending.empty(); ++a) {
			std::vector<Interval> still;
			for (const auto& s : pending) {
				++stats_.h_evaluations;
				const auto to_a = match_measure(oe, ctx_.p_measure(a, placed, job), s, "h_a");
				const Interval dst_hull = hull(to_a, true);
				std::vector<Time> cuts = breaks_within(ctx_.owner_breaks(a), dst_hull);
				counter(AssignTag::M3, a).breaks_within(dst_hull, cuts);
				for (const auto& mt : split_dst(to_a, cuts)) {
					const auto owner = ctx_.owner_over(a, placed, mt.dst);
					if (!owner) throw CertificateError("h_a image " + describe(ctx_.instance(), job, mt.dst) + " is uncovered");
					if (counter(AssignTag::M3, a).max_over(mt.dst) == 0)
						record({job, mt.src, *owner, a, mt.dst, AssignTag::M3, target_class(*owner, mt.dst), Rational(1)});
					else
						still.push_back(mt.src);
				}
			}
			pending = std::move(still);
		}
		if (!pending.empty()) {
			const auto& inst = ctx_.instance();
			throw CertificateError("no free M3 target for " + describe(inst, job, pending.front()) +
			                       " after arrival of job " + std::to_string(inst.jobs[placed].id));
		}
	}
};

// ---------------------------------------------------------------------------
// m = 2

class TwoMachineRoutine : RoutineBase {
public:
	TwoMachineRoutine(const CertifyContext& ctx, M2Options options) : RoutineBase(ctx), options_(options) {}

	AssignmentCertificate run() {
		const auto& inst = ctx_.instance();
		for (std::size_t k = 0; k < inst.size(); ++k)
			for (const auto& piece : ctx_.classification().oe[k].pieces()) assign(k, piece);
		return finish(CertificateKind::m2);
	}

private:
	void assign(std::size_t job, const Interval& piece) {
		const MachineIndex home = ctx_.gr().machine_of[job];
		const MachineIndex other = home == 1 ? 2 : 1;

		std::vector<Time> cuts;
		for (MachineIndex a : {home, other}) {
			for (const auto& t : breaks_within(ctx_.owner_breaks(a), piece)) cuts.push_back(t);
			counter(AssignTag::N2, a).breaks_within(piece, cuts);
		}
		counter(AssignTag::N1, home).breaks_within(piece, cuts);
		for (const auto& sub : split_dst({{piece, piece}}, cuts)) {
			const Interval& s = sub.src;
			// f' is the p-piece at the same points on the job's own GR machine.
			if (!ctx_.owner_over(home, job, s))
				throw CertificateError("oe piece " + describe(ctx_.instance(), job, s) + " has no GR owner");
			if (try_ge_assign(job, s, home) || (options_.variant != M2Variant::own_machine && try_ge_assign(job, s, other))) {
				++stats_.direct_steps;
				continue;
			}
			++stats_.fallback_steps;
			three_p(job, s, home, other);
		}
	}

	bool try_ge_assign(std::size_t job, const Interval& s, MachineIndex machine) {
		const auto owner = ctx_.owner_over(machine, view(job, false), s);
		if (!owner) return false;
		const SegmentClass cls = target_class(*owner, s);
		if (cls != SegmentClass::GE || counter(AssignTag::N2, machine).max_over(s) != 0) return false;
		record({job, s, *owner, machine, s, AssignTag::N2, cls, Rational(1)});
		return true;
	}

	void three_p(std::size_t job, const Interval& src, MachineIndex home, MachineIndex other) {
		const auto& inst = ctx_.instance();
		++stats_.h_evaluations;
		const auto to_other = match_measure(ctx_.oe_measure(job), ctx_.p_measure(other, view(job, true), job), src, "h_m1");
		const Interval dst_hull = hull(to_other, true);
		std::vector<Time> cuts = breaks_within(ctx_.owner_breaks(other), dst_hull);
		for (const auto& t : breaks_within(ctx_.owner_breaks(home), dst_hull)) cuts.push_back(t);
		counter(AssignTag::N1, other).breaks_within(dst_hull, cuts);
		counter(AssignTag::N1, home).breaks_within(dst_hull, cuts);
		auto matches = split_dst(to_other, cuts);

		for (const auto& mt : matches) {
			counting_check(job, mt.dst.lo + (mt.dst.hi - mt.dst.lo) / Rational(2));
			const auto f_prime = ctx_.owner_over(home, view(job, true), mt.src);
			const auto f1 = ctx_.owner_over(other, view(job, true), mt.dst);
			const auto f2 = ctx_.owner_over(home, view(job, true), mt.dst);
			if (!f_prime || !f1 || !f2)
				throw CertificateError("3p-assign for " + describe(inst, job, mt.src) + " lacks a p-fraction");
			const std::array<std::tuple<MachineIndex, Interval, std::size_t>, 3> targets{
			    {{home, mt.src, *f_prime}, {other, mt.dst, *f1}, {home, mt.dst, *f2}}};
			std::string blocked;
			for (const auto& [machine, iv, owner] : targets)
				if (blocked.empty() && counter(AssignTag::N1, machine).max_over(iv) != 0)
					blocked = describe(inst, owner, iv) + " on machine " + std::to_string(machine) + " already used";
			if (blocked.empty() && mt.src.intersects(mt.dst))
				blocked = "f' and f2 overlap on machine " + std::to_string(home);
			if (blocked.empty()) {
				for (const auto& [machine, iv, owner] : targets)
					record({job, mt.src, owner, machine, iv, AssignTag::N1, target_class(owner, iv), Rational(1, 3)});
				continue;
			}
			if (!options_.repair || !repair(job, mt.src, home, other))
				throw CertificateError("3p-assign for " + describe(inst, job, mt.src) + " finds target " + blocked);
			++stats_.repairs;
		}
	}

	/// Repair: three N1-free p-pieces taken in time order, first inside the job's
	/// interval (outside its n-intervals), then anywhere.
	bool repair(std::size_t job, const Interval& src, MachineIndex home, MachineIndex other) {
		const auto& inst = ctx_.instance();
		const std::size_t v = view(job, true);
		Interval everything = inst.jobs.front().interval();
		for (const auto& j : inst.jobs) everything = {min(everything.lo, j.release), max(everything.hi, j.deadline)};
		for (int slot = 0; slot < 3; ++slot) {
			Rational need = src.length();
			Time cursor = src.lo;
			for (bool local : {true, false}) {
				for (MachineIndex a : {other, home}) {
					if (need.is_zero()) break;
					const Interval window = local ? inst.jobs[job].interval() : everything;
					IntervalSet free = ctx_.prefix_cover(a, v).clipped(window);
					if (local) free = free.minus(ctx_.classification().n[job]);
					free = free.minus(counter(AssignTag::N1, a).positive_within(window));
					for (const auto& p : free.pieces()) {
						if (need.is_zero()) break;
						const Rational len = min(p.length(), need);
						const Match whole{{cursor, cursor + len}, {p.lo, p.lo + len}};
						for (const auto& mt : split_dst({whole}, breaks_within(ctx_.owner_breaks(a), whole.dst))) {
							const auto owner = ctx_.owner_over(a, v, mt.dst);
							if (!owner) return false;
							record({job, mt.src, *owner, a, mt.dst, AssignTag::N1, target_class(*owner, mt.dst), Rational(1, 3)});
						}
						cursor += len;
						need -= len;
					}
				}
			}
			if (!need.is_zero()) return false;
		}
		return true;
	}

	/// Arrival prefix the routine looks at when handling `job`.
	std::size_t view(std::size_t job, bool for_3p) const {
		const std::size_t last = ctx_.instance().size() - 1;
		if (options_.variant == M2Variant::final_schedule) return last;
		if (options_.variant == M2Variant::final_ownership && !for_3p) return last;
		return job;
	}

	M2Options options_;
};

}  // namespace

AssignmentCertificate assignment_routine_general(const Instance& instance, const Schedule& gr, const Schedule& opt) {
	const CertifyContext ctx(instance, gr, opt);
	return GeneralRoutine(ctx).run();
}

AssignmentCertificate assignment_routine_m2(const Instance& instance, const Schedule& gr, const Schedule& opt,
                                            M2Options options) {
	if (instance.machines != 2) throw InputError("the two-machine routine requires m = 2");
	const CertifyContext ctx(instance, gr, opt);
	return TwoMachineRoutine(ctx, options).run();
}

// ---------------------------------------------------------------------------
// Verification

namespace {

/// Chronologically-first job on `machine` whose open interval contains t.
std::optional<std::size_t> owner_at(const Instance& inst, const Schedule& s, MachineIndex machine, const Time& t) {
	for (std::size_t pos : s.placement_order) {
		const Job& j = inst.jobs[pos];
		if (s.machine_of[pos] == machine && j.release < t && t < j.deadline) return pos;
	}
	return std::nullopt;
}

/// Pointwise class of `job` at t, computed straight from the two schedules.
SegmentClass class_at(const Instance& inst, const Schedule& gr, const Schedule& opt, std::size_t job, const Time& t) {
	const bool g = owner_at(inst, gr, gr.machine_of[job], t) == job;
	const bool o = owner_at(inst, opt, opt.machine_of[job], t) == job;
	if (g && o) return SegmentClass::C;
	if (g) return SegmentClass::GE;
	if (o) return SegmentClass::OE;
	return SegmentClass::N;
}

Time midpoint(const Time& lo, const Time& hi) { return lo + (hi - lo) / Rational(2); }

std::vector<Time> sorted_unique(std::vector<Time> v) {
	std::sort(v.begin(), v.end());
	v.erase(std::unique(v.begin(), v.end()), v.end());
	return v;
}

std::string span_str(const Interval& iv) {
	std::ostringstream s;
	s << "[" << iv.lo << ", " << iv.hi << "]";
	return s.str();
}

}  // namespace

bool VerificationReport::passed() const {
	return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* VerificationReport::find(const std::string& name) const {
	for (const auto& c : checks)
		if (c.name == name) return &c;
	return nullptr;
}

VerificationReport verify_certificate(const AssignmentCertificate& cert, const Instance& inst, const Schedule& gr,
                                      const Schedule& opt) {
	check_schedule(inst, gr);
	check_schedule(inst, opt);
	VerificationReport rep;
	const std::size_t n = inst.size();
	const bool general = cert.kind == CertificateKind::general;

	std::vector<Time> all_points;
	for (const auto& j : inst.jobs) {
		all_points.push_back(j.release);
		all_points.push_back(j.deadline);
	}
	all_points = sorted_unique(all_points);

	// Class measures from pointwise ownership on the elementary grid.
	for (std::size_t i = 0; i < n; ++i) {
		const Job& j = inst.jobs[i];
		for (std::size_t p = 0; p + 1 < all_points.size(); ++p) {
			const Interval cell{all_points[p], all_points[p + 1]};
			if (!j.interval().contains(cell)) continue;
			const SegmentClass cls = class_at(inst, gr, opt, i, midpoint(cell.lo, cell.hi));
			if (cls == SegmentClass::C) rep.v_c += cell.length();
			if (cls == SegmentClass::GE) rep.v_ge += cell.length();
		}
	}
	rep.v_gr = profit_report(inst, gr).total;
	rep.v_opt = profit_report(inst, opt).total;

	// Measure preservation.
	{
		CheckResult chk{"measure_preservation", true, ""};
		for (const auto& p : cert.pieces) {
			if (!(p.source.lo < p.source.hi) || p.source.length() != p.target.length()) {
				chk.passed = false;
				chk.detail = "source " + span_str(p.source) + " of job " + std::to_string(inst.jobs[p.source_job].id) +
				             " vs target " + span_str(p.target);
				break;
			}
		}
		rep.checks.push_back(chk);
	}

	// Source tiling: every OE cell carries total weight one, everything else none.
	{
		CheckResult chk{"source_tiling", true, ""};
		for (std::size_t i = 0; i < n && chk.passed; ++i) {
			std::vector<const CertificatePiece*> mine;
			std::vector<Time> pts = all_points;
			for (const auto& p : cert.pieces)
				if (p.source_job == i) {
					mine.push_back(&p);
					pts.push_back(p.source.lo);
					pts.push_back(p.source.hi);
				}
			pts = sorted_unique(pts);
			const Job& j = inst.jobs[i];
			for (std::size_t q = 0; q + 1 < pts.size(); ++q) {
				const Interval cell{pts[q], pts[q + 1]};
				Rational weight;
				int n1 = 0, other = 0;
				for (const auto* p : mine) {
					if (!p->source.contains(cell)) continue;
					weight += p->weight;
					(p->tag == AssignTag::N1 ? n1 : other) += 1;
				}
				const bool inside = j.interval().contains(cell);
				const bool is_oe = inside && class_at(inst, gr, opt, i, midpoint(cell.lo, cell.hi)) == SegmentClass::OE;
				bool ok = is_oe ? weight == Rational(1) : (n1 == 0 && other == 0);
				if (ok && is_oe) ok = general ? (other == 1 && n1 == 0) : ((n1 == 3 && other == 0) || (n1 == 0 && other == 1));
				if (!ok) {
					chk.passed = false;
					chk.detail = "job " + std::to_string(j.id) + " cell " + span_str(cell) + (is_oe ? " (oe)" : " (not oe)") +
					             " carries weight " + weight.str();
					break;
				}
			}
		}
		rep.checks.push_back(chk);
	}

	// Targets are p-intervals owned by the named job on its GR machine, of the stated class.
	{
		CheckResult chk{"target_validity", true, ""};
		for (const auto& p : cert.pieces) {
			std::string why;
			if (p.target_machine < 1 || p.target_machine > inst.machines || gr.machine_of[p.target_job] != p.target_machine)
				why = "wrong machine";
			else if ((p.tag == AssignTag::M2 || p.tag == AssignTag::N2) && p.target_class != SegmentClass::GE)
				why = std::string(to_string(p.tag)) + " target must be ge";
			else if (p.target_class != SegmentClass::C && p.target_class != SegmentClass::GE)
				why = "target is not a p-interval";
			else if (!inst.jobs[p.target_job].interval().contains(p.target))
				why = "target outside the job interval";
			if (why.empty()) {
				std::vector<Time> pts{p.target.lo, p.target.hi};
				for (const auto& t : all_points)
					if (p.target.lo < t && t < p.target.hi) pts.push_back(t);
				pts = sorted_unique(pts);
				for (std::size_t q = 0; q + 1 < pts.size() && why.empty(); ++q)
					if (class_at(inst, gr, opt, p.target_job, midpoint(pts[q], pts[q + 1])) != p.target_class)
						why = "target class mismatch on " + span_str({pts[q], pts[q + 1]});
			}
			if (!why.empty()) {
				chk.passed = false;
				chk.detail = std::string(to_string(p.tag)) + " target " + span_str(p.target) + " of job " +
				             std::to_string(inst.jobs[p.target_job].id) + ": " + why;
				break;
			}
		}
		rep.checks.push_back(chk);
	}

	// Usage caps: each assignment function is injective on target points.
	{
		CheckResult chk{"usage_caps", true, ""};
		std::map<std::pair<int, MachineIndex>, std::vector<Interval>> by_key;
		for (const auto& p : cert.pieces) by_key[{static_cast<int>(p.tag), p.target_machine}].push_back(p.target);
		for (auto& [key, ivs] : by_key) {
			std::sort(ivs.begin(), ivs.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
			for (std::size_t q = 1; q < ivs.size(); ++q) {
				if (ivs[q].lo < ivs[q - 1].hi) {
					chk.passed = false;
					const Interval clash{ivs[q].lo, min(ivs[q].hi, ivs[q - 1].hi)};
					chk.detail = std::string(to_string(static_cast<AssignTag>(key.first))) + " uses machine " +
					             std::to_string(key.second) + " point " + midpoint(clash.lo, clash.hi).str() + " in " +
					             span_str(clash) + " twice";
					break;
				}
				if (ivs[q - 1].hi < ivs[q].hi) continue;
				ivs[q] = ivs[q - 1];  // keep the farthest-reaching interval for the next comparison
			}
			if (!chk.passed) break;
		}
		rep.checks.push_back(chk);
	}

	for (const auto& p : cert.pieces) {
		const Rational mass = p.source.length() * p.weight;
		if (general) (p.target_class == SegmentClass::C ? rep.v_oe : rep.v_oe_prime) += mass;
		else (p.tag == AssignTag::N1 ? rep.v_oe : rep.v_oe_prime) += mass;
	}

	auto add = [&rep](std::string name, bool ok, std::string detail) {
		rep.checks.push_back({std::move(name), ok, ok ? std::string() : std::move(detail)});
	};
	add("gr_identity", rep.v_gr == rep.v_c + rep.v_ge,
	    "V_GR " + rep.v_gr.str() + " != V_c + V_ge " + (rep.v_c + rep.v_ge).str());
	add("opt_identity", rep.v_opt == rep.v_c + rep.v_oe + rep.v_oe_prime,
	    "V_OPT " + rep.v_opt.str() + " != " + (rep.v_c + rep.v_oe + rep.v_oe_prime).str());
	if (general) {
		add("oe_le_2c", rep.v_oe <= Rational(2) * rep.v_c, rep.v_oe.str() + " > 2*" + rep.v_c.str());
		add("oe_prime_le_3ge", rep.v_oe_prime <= Rational(3) * rep.v_ge, rep.v_oe_prime.str() + " > 3*" + rep.v_ge.str());
		add("ratio_bound", rep.v_opt <= Rational(3) * rep.v_gr, rep.v_opt.str() + " > 3*" + rep.v_gr.str());
	} else {
		add("oe_bar_le_third_gr", Rational(3) * rep.v_oe <= rep.v_gr, rep.v_oe.str() + " > " + rep.v_gr.str() + "/3");
		add("oe_bar_prime_le_ge", rep.v_oe_prime <= rep.v_ge, rep.v_oe_prime.str() + " > " + rep.v_ge.str());
		add("ratio_bound", Rational(3) * rep.v_opt <= Rational(4) * rep.v_gr, rep.v_opt.str() + " > 4/3*" + rep.v_gr.str());
	}
	const auto& s = cert.summary;
	add("summary_consistent",
	    s.v_c == rep.v_c && s.v_ge == rep.v_ge && s.v_oe == rep.v_oe && s.v_oe_prime == rep.v_oe_prime,
	    "certificate summary disagrees with recomputed totals");
	return rep;
}

}  // namespace satsched

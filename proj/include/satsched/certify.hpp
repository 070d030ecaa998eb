#pragma once

// Interval classification and the two charging routines that turn a concrete
// (GR, OPT) pair into a checkable certificate of the competitive bounds.
//
// Each point of a job's interval is classified by who monopolizes it:
//   C  - both GR and OPT credit the job,   GE - only GR,
//   OE - only OPT,                          N  - neither.
// A "p" point is C or GE. The routines assign p-points of GR's machines to every
// OE point through measure-preserving translations, and the verifier re-derives
// every quantity from the schedules before checking the usage caps.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "satsched/model.hpp"

namespace satsched {

enum class SegmentClass { C, GE, OE, N };
const char* to_string(SegmentClass cls);

struct ClassifiedSegment {
	std::size_t job = 0;  // arrival position
	Interval span;
	SegmentClass cls = SegmentClass::N;
	MachineIndex gr_machine = 0;
	MachineIndex opt_machine = 0;
};

/// Per-job class sets plus the flat segment list (sorted by job, then time).
struct Classification {
	std::vector<IntervalSet> c, ge, oe, n;
	std::vector<ClassifiedSegment> segments;

	/// Class of `job` over `iv`, or nullopt when the class is not constant there.
	std::optional<SegmentClass> class_over(std::size_t job, const Interval& iv) const;
	Rational total(SegmentClass cls) const;
};

/// Uniform mode only. Ownership in each schedule follows its placement order.
Classification classify(const Instance& instance, const Schedule& gr, const Schedule& opt);

/// Piecewise-linear non-decreasing function t -> |support ∩ [origin, t]|.
class CumulativeMeasure {
public:
	CumulativeMeasure(IntervalSet support, Time origin) : support_(std::move(support)), origin_(std::move(origin)) {}

	Rational value_at(const Time& t) const;
	/// Smallest t >= origin with value_at(t) == v, or nullopt when v exceeds the total.
	std::optional<Time> first_reach(const Rational& v) const;
	Rational total() const { return support_.measure(); }
	const IntervalSet& support() const { return support_; }

private:
	IntervalSet support_;
	Time origin_;
};

/// Shared state for h-map evaluation and both routines.
class CertifyContext {
public:
	CertifyContext(const Instance& instance, const Schedule& gr, const Schedule& opt);

	const Instance& instance() const { return instance_; }
	const Schedule& gr() const { return gr_; }
	const Schedule& opt() const { return opt_; }
	const Classification& classification() const { return classes_; }

	/// E(J, .): OE measure of `job` accumulated from its release time.
	CumulativeMeasure oe_measure(std::size_t job) const;
	/// P_a(J, J', r(J'), .): p-measure on GR machine `machine` right after arrival
	/// `placed` is placed, inside J' = `source`'s interval, excluding N points of J'.
	CumulativeMeasure p_measure(MachineIndex machine, std::size_t placed, std::size_t source) const;

	/// Union of GR job intervals on `machine` after arrivals 0..placed.
	const IntervalSet& prefix_cover(MachineIndex machine, std::size_t placed) const;
	/// GR owner of the open interval `iv` on `machine` after arrivals 0..placed, if one job owns all of it.
	std::optional<std::size_t> owner_over(MachineIndex machine, std::size_t placed, const Interval& iv) const;
	/// Owner and c/ge class boundaries on `machine` (all arrivals), sorted.
	const std::vector<Time>& owner_breaks(MachineIndex machine) const;

private:
	struct OwnedPiece {
		Interval span;
		std::size_t job;
	};

	const Instance& instance_;
	const Schedule& gr_;
	const Schedule& opt_;
	Classification classes_;
	std::vector<std::vector<OwnedPiece>> owned_by_machine_;   // [machine] sorted by lo
	std::vector<std::vector<Time>> breaks_by_machine_;        // [machine]
	std::vector<std::vector<IntervalSet>> prefix_cover_;      // [placed][machine]
};

/// h_a(J, J', t): smallest t' in [r(J'), d(J')] with P_a(J, J', r(J'), t') = E(J', t).
/// `placed` is J's arrival position, `source` is J'. Throws CertificateError when no
/// such point exists.
Time h_map(const CertifyContext& ctx, MachineIndex machine, std::size_t placed, std::size_t source, const Time& t);

enum class CertificateKind { general, m2 };
enum class AssignTag { M1, M2, M3, N1, N2 };
const char* to_string(CertificateKind kind);
const char* to_string(AssignTag tag);

struct CertificatePiece {
	std::size_t source_job = 0;  // OE side (arrival position)
	Interval source;
	std::size_t target_job = 0;  // p side
	MachineIndex target_machine = 0;
	Interval target;
	AssignTag tag = AssignTag::M1;
	SegmentClass target_class = SegmentClass::C;
	Rational weight{1};
};

struct CertificateSummary {
	Rational v_c, v_ge;
	/// General: OE mass charged to C / GE targets. m2: OE mass 3p-assigned / ge-assigned.
	Rational v_oe, v_oe_prime;
};

struct RoutineStats {
	std::uint64_t h_evaluations = 0;
	std::uint64_t direct_steps = 0;
	std::uint64_t fallback_steps = 0;
	std::uint64_t counting_checks = 0;
	std::uint64_t counting_violations = 0;
	std::uint64_t repairs = 0;
};

struct AssignmentCertificate {
	CertificateKind kind = CertificateKind::general;
	std::vector<CertificatePiece> pieces;
	CertificateSummary summary;
	RoutineStats stats;
};

/// Per-arrival replay with reset-and-rebuild of M1/M2/M3 for every job that
/// intersects the new arrival. Throws CertificateError if the fallback step has no target.
AssignmentCertificate assignment_routine_general(const Instance& instance, const Schedule& gr, const Schedule& opt);

/// Which arrival prefix the two-machine routine consults.
///  ge_either_machine: online view; the direct step takes a free ge-piece at t on the
///                     job's own machine, else on the other machine (default).
///  own_machine:       online view; the direct step only looks at the job's own machine.
///  final_ownership:   as the default, but the direct step sees the final GR ownership.
///  final_schedule:    every lookup, h-map included, uses the final GR schedule.
enum class M2Variant { ge_either_machine, own_machine, final_ownership, final_schedule };

struct M2Options {
	M2Variant variant = M2Variant::ge_either_machine;
	/// When a 3p-assignment finds one of its three targets already used, take
	/// three N1-free p-pieces in time order instead (counted in stats.repairs).
	/// Without it such inputs raise CertificateError.
	bool repair = true;
};

/// Two-machine routine: at each placement, ge-assign (N2) or 3p-assign (N1)
/// every OE piece of the placed job.
AssignmentCertificate assignment_routine_m2(const Instance& instance, const Schedule& gr, const Schedule& opt,
                                            M2Options options = {});

struct CheckResult {
	std::string name;
	bool passed = true;
	std::string detail;  // counterexample on failure
};

struct VerificationReport {
	std::vector<CheckResult> checks;
	Rational v_gr, v_opt;
	Rational v_c, v_ge, v_oe, v_oe_prime;

	bool passed() const;
	const CheckResult* find(const std::string& name) const;
};

/// Re-derives classification and totals from the schedules and checks the
/// certificate: source tiling, measure preservation, target validity, usage
/// caps, both accounting identities, and the resulting ratio bound.
VerificationReport verify_certificate(const AssignmentCertificate& cert, const Instance& instance, const Schedule& gr,
                                      const Schedule& opt);

}  // namespace satsched

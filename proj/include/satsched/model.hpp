#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "satsched/interval_set.hpp"
#include "satsched/rational.hpp"

namespace satsched {

using JobId = long;
/// Machines are numbered 1..m throughout.
using MachineIndex = int;

enum class ProfitMode { uniform, explicit_profit };

struct Job {
	JobId id = 0;
	Time release;
	Time deadline;
	Rational profit;

	Rational length() const { return deadline - release; }
	Interval interval() const { return {release, deadline}; }

	friend bool operator==(const Job&, const Job&) = default;
};

/// Jobs in arrival order plus machine count and profit mode.
struct Instance {
	int machines = 1;
	std::vector<Job> jobs;
	ProfitMode profit_mode = ProfitMode::uniform;

	std::size_t size() const { return jobs.size(); }
	/// Position of `id` in arrival order; throws if absent.
	std::size_t position(JobId id) const;

	friend bool operator==(const Instance&, const Instance&) = default;
};

/// Unvalidated job description: profit may be omitted in uniform mode.
struct RawJob {
	JobId id = 0;
	Time release;
	Time deadline;
	std::optional<Rational> profit;
};

struct RawInstance {
	int machines = 0;
	std::vector<RawJob> jobs;
	ProfitMode profit_mode = ProfitMode::uniform;
};

/// Checks every model invariant and fills uniform profits; throws InputError.
Instance validate_instance(const RawInstance& raw);
/// Re-checks an already constructed instance (used on generated inputs).
void check_instance(const Instance& instance);

/// Machine assignment plus the order in which jobs were placed.
///
/// `machine_of` is indexed by arrival position, 0 meaning "not yet placed", which
/// lets the same type describe prefixes during online replay.
struct Schedule {
	std::vector<MachineIndex> machine_of;
	std::vector<std::size_t> placement_order;

	/// Every job placed in arrival order on the given machines.
	static Schedule in_arrival_order(std::vector<MachineIndex> machines);

	bool placed(std::size_t pos) const { return pos < machine_of.size() && machine_of[pos] != 0; }
	/// Rank of each arrival position in placement order (size n, unplaced = n).
	std::vector<std::size_t> placement_rank() const;

	friend bool operator==(const Schedule&, const Schedule&) = default;
};

/// Throws InputError unless `schedule` places every job exactly once on machines 1..m.
void check_schedule(const Instance& instance, const Schedule& schedule);

/// Maximal open interval on one machine over which the set of covering jobs is constant.
struct PSegment {
	MachineIndex machine = 0;
	Time lo;
	Time hi;
	int multiplicity = 0;
	/// Arrival position of the chronologically first-placed covering job.
	std::optional<std::size_t> owner;
	/// Arrival positions of the covering jobs, ascending.
	std::vector<std::size_t> jobs;
};

struct SegmentContribution {
	std::size_t job = 0;  // arrival position
	MachineIndex machine = 0;
	Time lo;
	Time hi;
	Rational contribution;
};

struct ProfitReport {
	std::vector<SegmentContribution> per_segment;
	/// Indexed by arrival position.
	std::vector<Rational> per_job;
	Rational total;
};

/// P-interval decomposition of one machine; empty when nothing is placed there.
std::vector<PSegment> decompose(const Instance& instance, const Schedule& schedule, MachineIndex machine);

/// Shared-profit evaluation of a complete (or prefix) schedule, exact.
ProfitReport profit_report(const Instance& instance, const Schedule& schedule);

/// Union measure of the job intervals placed on `machine`. Uniform mode only.
Rational covered_length(const Instance& instance, const Schedule& schedule, MachineIndex machine);

/// Union of the placed job intervals on every machine (index 0 unused).
std::vector<IntervalSet> machine_cover(const Instance& instance, const Schedule& schedule);

/// Portion of each job's interval it monopolizes on its machine (first placed wins).
/// Unplaced jobs get an empty set. Indexed by arrival position.
std::vector<IntervalSet> owned_sets(const Instance& instance, const Schedule& schedule);

}  // namespace satsched

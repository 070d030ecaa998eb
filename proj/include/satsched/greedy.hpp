#pragma once

#include <vector>

#include "satsched/model.hpp"

namespace satsched {

/// Incremental state of the greedy online algorithm: jobs placed so far and the
/// union of their intervals on each machine.
class GreedyState {
public:
	GreedyState(int machines, ProfitMode mode);

	int machines() const { return machines_; }

	/// Profit the job would collect on `machine` given the current occupancy.
	/// Uniform mode: the uncovered length of the job's interval. Explicit mode:
	/// sum over sub-segments of len/(d-r) * v/(k+1) for current multiplicity k.
	Rational marginal_gain(const Job& job, MachineIndex machine) const;

	/// Places `job` on the machine of largest gain, lowest index on ties.
	MachineIndex place(const Job& job);

	const IntervalSet& covered(MachineIndex machine) const { return covered_[static_cast<std::size_t>(machine)]; }
	const std::vector<MachineIndex>& assignment() const { return assignment_; }
	std::size_t placed_count() const { return placed_.size(); }

private:
	int machines_;
	ProfitMode mode_;
	std::vector<Job> placed_;
	std::vector<MachineIndex> assignment_;
	std::vector<IntervalSet> covered_;  // index 0 unused
};

struct GreedyStep {
	JobId job = 0;
	std::vector<Rational> gains;  // gains[a-1] for machine a
	MachineIndex chosen = 0;
};

struct GreedyRun {
	Schedule schedule;
	ProfitReport report;
	std::vector<GreedyStep> trace;
};

/// Replays the instance in arrival order through GreedyState.
GreedyRun run_gr(const Instance& instance);

}  // namespace satsched

#include "satsched/greedy.hpp"

#include <algorithm>

#include "satsched/errors.hpp"

namespace satsched {

GreedyState::GreedyState(int machines, ProfitMode mode)
    : machines_(machines), mode_(mode), covered_(static_cast<std::size_t>(machines) + 1) {
	if (machines < 1) throw InputError("greedy needs at least one machine");
}

Rational GreedyState::marginal_gain(const Job& job, MachineIndex machine) const {
	const Interval span = job.interval();
	if (mode_ == ProfitMode::uniform) return span.length() - covered(machine).measure_within(span);

	// Multiplicity of every sub-segment of the job's interval on this machine.
	std::vector<Time> cuts{span.lo, span.hi};
	std::vector<const Job*> overlapping;
	for (std::size_t i = 0; i < placed_.size(); ++i) {
		if (assignment_[i] != machine || !placed_[i].interval().intersects(span)) continue;
		overlapping.push_back(&placed_[i]);
		if (span.lo < placed_[i].release) cuts.push_back(placed_[i].release);
		if (placed_[i].deadline < span.hi) cuts.push_back(placed_[i].deadline);
	}
	std::sort(cuts.begin(), cuts.end());
	cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

	Rational gain;
	const Rational rate = job.profit / job.length();
	for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
		long k = 0;
		for (const Job* other : overlapping)
			if (other->release <= cuts[c] && cuts[c + 1] <= other->deadline) ++k;
		gain += (cuts[c + 1] - cuts[c]) * rate / Rational(k + 1);
	}
	return gain;
}

MachineIndex GreedyState::place(const Job& job) {
	MachineIndex best = 1;
	Rational best_gain = marginal_gain(job, 1);
	for (MachineIndex a = 2; a <= machines_; ++a) {
		Rational g = marginal_gain(job, a);
		if (best_gain < g) {
			best = a;
			best_gain = std::move(g);
		}
	}
	placed_.push_back(job);
	assignment_.push_back(best);
	covered_[static_cast<std::size_t>(best)].add(job.interval());
	return best;
}

GreedyRun run_gr(const Instance& instance) {
	GreedyState state(instance.machines, instance.profit_mode);
	GreedyRun run;
	run.trace.reserve(instance.size());
	for (const Job& job : instance.jobs) {
		GreedyStep step;
		step.job = job.id;
		for (MachineIndex a = 1; a <= instance.machines; ++a) step.gains.push_back(state.marginal_gain(job, a));
		step.chosen = state.place(job);
		run.trace.push_back(std::move(step));
	}
	run.schedule = Schedule::in_arrival_order(state.assignment());
	run.report = profit_report(instance, run.schedule);
	return run;
}

}  // namespace satsched

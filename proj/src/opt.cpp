#include "satsched/opt.hpp"

#include <string>

#include "satsched/errors.hpp"

namespace satsched {

namespace {

/// Shared-profit value of a set of jobs on one machine (explicit mode).
Rational machine_value(const Instance& instance, const std::vector<std::size_t>& jobs) {
	if (jobs.empty()) return {};
	Schedule s;
	s.machine_of.assign(instance.size(), 0);
	for (std::size_t i : jobs) {
		s.machine_of[i] = 1;
		s.placement_order.push_back(i);
	}
	Rational total;
	for (const auto& seg : decompose(instance, s, 1)) {
		if (seg.multiplicity == 0) continue;
		const Rational share = (seg.hi - seg.lo) / Rational(seg.multiplicity);
		for (std::size_t i : seg.jobs) total += share * instance.jobs[i].profit / instance.jobs[i].length();
	}
	return total;
}

class Search {
public:
	Search(const Instance& instance, const SearchLimits& limits)
	    : inst_(instance), limits_(limits), n_(instance.size()), m_(instance.machines),
	      current_(n_, 0), cover_(static_cast<std::size_t>(m_) + 1), members_(static_cast<std::size_t>(m_) + 1),
	      value_of_(static_cast<std::size_t>(m_) + 1), suffix_(n_ + 1) {
		for (std::size_t i = n_; i-- > 0;) suffix_[i] = suffix_[i + 1] + inst_.jobs[i].profit;
	}

	OptResult run() {
		recurse(0, 0, Rational{});
		OptResult out;
		out.schedule = Schedule::in_arrival_order(best_);
		out.value = best_value_;
		out.states = states_;
		return out;
	}

private:
	void recurse(std::size_t pos, int used, const Rational& value) {
		if (++states_ > limits_.max_states)
			throw BudgetExceeded("exhaustive search exceeded " + std::to_string(limits_.max_states) + " states");
		if (pos == n_) {
			if (!have_best_ || best_value_ < value) {
				have_best_ = true;
				best_value_ = value;
				best_ = current_;
			}
			return;
		}
		if (limits_.bound_pruning && have_best_ && value + suffix_[pos] <= best_value_) return;

		const Job& job = inst_.jobs[pos];
		const int last = limits_.symmetry_pruning ? std::min(m_, used + 1) : m_;
		for (MachineIndex a = 1; a <= last; ++a) {
			const auto ai = static_cast<std::size_t>(a);
			current_[pos] = a;
			if (inst_.profit_mode == ProfitMode::uniform) {
				const Rational gain = job.length() - cover_[ai].measure_within(job.interval());
				const IntervalSet saved = cover_[ai];
				cover_[ai].add(job.interval());
				recurse(pos + 1, std::max(used, a), value + gain);
				cover_[ai] = saved;
			} else {
				members_[ai].push_back(pos);
				const Rational before = value_of_[ai];
				value_of_[ai] = machine_value(inst_, members_[ai]);
				recurse(pos + 1, std::max(used, a), value - before + value_of_[ai]);
				value_of_[ai] = before;
				members_[ai].pop_back();
			}
		}
		current_[pos] = 0;
	}

	const Instance& inst_;
	const SearchLimits& limits_;
	std::size_t n_;
	int m_;
	std::vector<MachineIndex> current_;
	std::vector<IntervalSet> cover_;
	std::vector<std::vector<std::size_t>> members_;
	std::vector<Rational> value_of_;
	std::vector<Rational> suffix_;
	std::vector<MachineIndex> best_;
	Rational best_value_;
	bool have_best_ = false;
	std::uint64_t states_ = 0;
};

}  // namespace

OptResult brute_force_opt(const Instance& instance, const SearchLimits& limits) {
	if (limits.max_jobs < 1) throw InputError("max_jobs must be at least 1");
	if (instance.size() > limits.max_jobs)
		throw InputError("instance has " + std::to_string(instance.size()) + " jobs; exhaustive search is limited to " +
		                 std::to_string(limits.max_jobs));
	return Search(instance, limits).run();
}

Rational opt_of_assignment(const Instance& instance, const std::vector<MachineIndex>& assignment) {
	return profit_report(instance, Schedule::in_arrival_order(assignment)).total;
}

}  // namespace satsched

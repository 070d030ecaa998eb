#pragma once

#include <cstdint>
#include <vector>

#include "satsched/model.hpp"

namespace satsched {

struct SearchLimits {
	std::size_t max_jobs = 12;
	std::uint64_t max_states = 200'000'000;
	/// Canonicalize machine labels: machine k may be opened only after 1..k-1.
	bool symmetry_pruning = true;
	/// Cut branches whose optimistic value (current + remaining profits) cannot beat the incumbent.
	bool bound_pruning = true;
};

struct OptResult {
	Schedule schedule;  // placement order = arrival order
	Rational value;
	std::uint64_t states = 0;
};

/// Exhaustive offline optimum. Among maximizers returns the lexicographically
/// smallest assignment vector. Throws InputError if the instance is larger than
/// `limits.max_jobs`, BudgetExceeded if the search visits more than `max_states` nodes.
OptResult brute_force_opt(const Instance& instance, const SearchLimits& limits = {});

/// Exact total profit of an assignment given in arrival order.
Rational opt_of_assignment(const Instance& instance, const std::vector<MachineIndex>& assignment);

}  // namespace satsched

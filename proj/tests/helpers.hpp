#pragma once

#include <initializer_list>
#include <utility>

#include "satsched/model.hpp"

namespace testutil {

using satsched::Instance;
using satsched::Rational;

// Jobs numbered from 1 in arrival order; profits default to the length.
inline Instance make_instance(int m, std::initializer_list<std::pair<Rational, Rational>> spans) {
	Instance inst;
	inst.machines = m;
	long id = 1;
	for (const auto& [r, d] : spans) inst.jobs.push_back({id++, r, d, d - r});
	return inst;
}

inline Instance tight_instance(const Rational& eps) {
	return make_instance(2, {{0, 1}, {Rational(2) - eps, 2}, {1, 2}, {0, 2}});
}

// Four jobs on one machine: [0,5], [1,3], [3,5], [4,5].
inline Instance four_jobs(int m, satsched::ProfitMode mode) {
	Instance inst = make_instance(m, {{0, 5}, {1, 3}, {3, 5}, {4, 5}});
	inst.profit_mode = mode;
	return inst;
}

}  // namespace testutil

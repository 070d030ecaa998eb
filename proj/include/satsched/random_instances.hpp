#pragma once

#include <cstdint>
#include <string>

#include "satsched/model.hpp"

namespace satsched {

struct SweepConfig {
	std::size_t count = 100;
	std::uint64_t seed = 1;
	int n_min = 1, n_max = 8;
	int m_min = 2, m_max = 2;
	/// Endpoints are k / endpoint_grid.
	int endpoint_grid = 24;
	/// Release times fall in [0, horizon); lengths in (0, max_length].
	int horizon = 4;
	int max_length = 2;
	ProfitMode mode = ProfitMode::uniform;
};

/// Throws InputError on an unusable configuration.
void check_config(const SweepConfig& config);

/// Deterministic in (config, index).
Instance gen_random(const SweepConfig& config, std::uint64_t index);

/// Stable 64-bit FNV-1a digest of the instance's canonical JSON, as 16 hex digits.
std::string instance_digest(const Instance& instance);

}  // namespace satsched

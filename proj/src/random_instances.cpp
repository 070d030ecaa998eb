#include "satsched/random_instances.hpp"

#include <cstdio>
#include <random>

#include "satsched/errors.hpp"
#include "satsched/json_io.hpp"

namespace satsched {

void check_config(const SweepConfig& c) {
	if (c.count < 1) throw InputError("sweep count must be at least 1");
	if (c.n_min < 1 || c.n_max < c.n_min) throw InputError("bad n range");
	if (c.m_min < 1 || c.m_max < c.m_min) throw InputError("bad m range");
	if (c.endpoint_grid < 1) throw InputError("endpoint grid must be at least 1");
	if (c.horizon < 1 || c.max_length < 1) throw InputError("horizon and max length must be at least 1");
}

Instance gen_random(const SweepConfig& c, std::uint64_t index) {
	check_config(c);
	std::seed_seq seq{static_cast<std::uint32_t>(c.seed), static_cast<std::uint32_t>(c.seed >> 32),
	                  static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
	std::mt19937_64 rng(seq);
	auto uniform = [&rng](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };

	const long g = c.endpoint_grid;
	Instance inst;
	inst.machines = static_cast<int>(uniform(c.m_min, c.m_max));
	inst.profit_mode = c.mode;
	const long n = uniform(c.n_min, c.n_max);
	for (long i = 0; i < n; ++i) {
		const long r = uniform(0, c.horizon * g - 1);
		const long len = uniform(1, c.max_length * g);
		Job job{i + 1, Rational(r, g), Rational(r + len, g), {}};
		job.profit = c.mode == ProfitMode::uniform ? job.length() : Rational(uniform(0, 4 * g), g);
		inst.jobs.push_back(job);
	}
	return inst;
}

std::string instance_digest(const Instance& instance) {
	const std::string text = instance_to_json(instance).dump();
	std::uint64_t h = 0xcbf29ce484222325ULL;
	for (unsigned char ch : text) {
		h ^= ch;
		h *= 0x100000001b3ULL;
	}
	char buf[17];
	std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
	return buf;
}

}  // namespace satsched

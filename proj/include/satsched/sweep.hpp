#pragma once

#include <optional>
#include <string>
#include <vector>

#include "satsched/certify.hpp"
#include "satsched/json_io.hpp"
#include "satsched/opt.hpp"
#include "satsched/random_instances.hpp"

namespace satsched {

enum class CertifyMode { none, automatic, general, m2, both };

struct SweepOptions {
	/// automatic: the two-machine routine when m = 2, the general one otherwise.
	CertifyMode certify = CertifyMode::automatic;
	SearchLimits limits;
	M2Options m2;
	/// 0 means "hardware concurrency, capped by SATSCHED_THREADS".
	unsigned threads = 0;
};

struct SweepRow {
	std::uint64_t index = 0;
	std::string digest;
	int m = 0;
	std::size_t n = 0;
	Rational gr, opt, ratio;
	/// "pass", "fail", "skipped", or "error"; `detail` says why when not "pass".
	std::string certificate = "skipped";
	std::string detail;
	bool opt_error = false;
	/// Construction aborted: an h-map gap or a blocked fallback step.
	bool construction_failed = false;
	std::uint64_t counting_violations = 0;
	/// Repair steps taken by the two-machine routine.
	std::uint64_t repairs = 0;
	/// The h-map had no solution.
	bool h_map_failed = false;
};

struct SweepResult {
	SweepConfig config;
	/// Sorted by ratio descending, then index ascending.
	std::vector<SweepRow> rows;
	Rational max_ratio;
	std::optional<std::uint64_t> argmax_index;
	std::size_t certificate_failures = 0;
	std::size_t construction_failures = 0;
	std::size_t opt_errors = 0;
	std::uint64_t counting_violations = 0;
	std::size_t h_map_failures = 0;
	/// Instances on which the two-machine routine needed its repair step.
	std::size_t repaired_instances = 0;
};

/// Worker count honoring SATSCHED_THREADS.
unsigned worker_count(unsigned requested);

SweepRow evaluate_row(const SweepConfig& config, std::uint64_t index, const SweepOptions& options);
SweepResult sweep(const SweepConfig& config, const SweepOptions& options = {});

/// Columns: index,digest,m,n,gr,opt,ratio,ratio_decimal,certificate,detail
std::string sweep_csv(const SweepResult& result);
Json sweep_summary_json(const SweepResult& result);

}  // namespace satsched

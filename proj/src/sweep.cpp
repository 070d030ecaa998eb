#include "satsched/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "satsched/certify.hpp"
#include "satsched/errors.hpp"
#include "satsched/greedy.hpp"

namespace satsched {

unsigned worker_count(unsigned requested) {
	unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
	if (const char* env = std::getenv("SATSCHED_THREADS")) {
		const long cap = std::strtol(env, nullptr, 10);
		if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
	}
	return std::max(1u, n);
}

namespace {

/// Runs one routine and verifies it; returns "" on success, else a reason.
std::string certify_one(bool two_machine, const Instance& inst, const Schedule& gr, const Schedule& opt,
                        const SweepOptions& options, SweepRow& row) {
	AssignmentCertificate cert;
	try {
		cert = two_machine ? assignment_routine_m2(inst, gr, opt, options.m2) : assignment_routine_general(inst, gr, opt);
	} catch (const CertificateError& e) {
		row.construction_failed = true;
		if (std::string(e.what()).find("h-map") != std::string::npos) row.h_map_failed = true;
		return std::string(two_machine ? "m2" : "general") + " construction: " + e.what();
	}
	row.counting_violations += cert.stats.counting_violations;
	row.repairs += cert.stats.repairs;
	const VerificationReport rep = verify_certificate(cert, inst, gr, opt);
	for (const auto& c : rep.checks)
		if (!c.passed) return std::string(two_machine ? "m2 " : "general ") + c.name + ": " + c.detail;
	return "";
}

}  // namespace

SweepRow evaluate_row(const SweepConfig& config, std::uint64_t index, const SweepOptions& options) {
	const Instance inst = gen_random(config, index);
	SweepRow row;
	row.index = index;
	row.digest = instance_digest(inst);
	row.m = inst.machines;
	row.n = inst.size();
	const GreedyRun gr = run_gr(inst);
	row.gr = gr.report.total;
	OptResult opt;
	try {
		opt = brute_force_opt(inst, options.limits);
	} catch (const BudgetExceeded& e) {
		row.opt_error = true;
		row.certificate = "error";
		row.detail = e.what();
		return row;
	}
	row.opt = opt.value;
	row.ratio = row.gr.is_zero() ? Rational(0) : row.opt / row.gr;

	if (options.certify == CertifyMode::none || inst.profit_mode != ProfitMode::uniform) return row;
	std::vector<bool> kinds;  // true = two-machine routine
	switch (options.certify) {
		case CertifyMode::automatic: kinds.push_back(inst.machines == 2); break;
		case CertifyMode::general: kinds.push_back(false); break;
		case CertifyMode::m2:
			if (inst.machines == 2) kinds.push_back(true);
			break;
		case CertifyMode::both:
			kinds.push_back(false);
			if (inst.machines == 2) kinds.push_back(true);
			break;
		case CertifyMode::none: break;
	}
	if (kinds.empty()) return row;
	row.certificate = "pass";
	for (bool two : kinds) {
		const std::string why = certify_one(two, inst, gr.schedule, opt.schedule, options, row);
		if (!why.empty()) {
			row.certificate = "fail";
			row.detail += (row.detail.empty() ? "" : "; ") + why;
		}
	}
	return row;
}

SweepResult sweep(const SweepConfig& config, const SweepOptions& options) {
	check_config(config);
	SweepResult out;
	out.config = config;
	out.rows.resize(config.count);
	std::atomic<std::size_t> next{0};
	std::exception_ptr failure;
	std::mutex failure_mu;
	auto work = [&] {
		for (;;) {
			const std::size_t i = next.fetch_add(1);
			if (i >= config.count) return;
			try {
				out.rows[i] = evaluate_row(config, i, options);
			} catch (...) {
				std::lock_guard<std::mutex> lock(failure_mu);
				if (!failure) failure = std::current_exception();
			}
		}
	};
	const unsigned workers = std::min<std::size_t>(worker_count(options.threads), config.count);
	std::vector<std::thread> pool;
	for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
	work();
	for (auto& t : pool) t.join();
	if (failure) std::rethrow_exception(failure);

	std::stable_sort(out.rows.begin(), out.rows.end(), [](const SweepRow& a, const SweepRow& b) {
		if (a.ratio != b.ratio) return b.ratio < a.ratio;
		return a.index < b.index;
	});
	for (const auto& r : out.rows) {
		if (r.certificate == "fail") ++out.certificate_failures;
		if (r.construction_failed) ++out.construction_failures;
		if (r.opt_error) ++out.opt_errors;
		out.counting_violations += r.counting_violations;
		if (r.h_map_failed) ++out.h_map_failures;
		if (r.repairs > 0) ++out.repaired_instances;
	}
	for (const auto& r : out.rows) {
		if (r.opt_error) continue;
		out.max_ratio = r.ratio;
		out.argmax_index = r.index;
		break;
	}
	return out;
}

namespace {

std::string csv_field(const std::string& s) {
	if (s.find_first_of(",\"\n") == std::string::npos) return s;
	std::string q = "\"";
	for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
	return q + "\"";
}

}  // namespace

std::string sweep_csv(const SweepResult& result) {
	std::ostringstream out;
	out << "index,digest,m,n,gr,opt,ratio,ratio_decimal,certificate,detail\n";
	for (const auto& r : result.rows) {
		out << r.index << ',' << r.digest << ',' << r.m << ',' << r.n << ',' << r.gr << ',' << r.opt << ',' << r.ratio
		    << ',' << to_decimal(r.ratio) << ',' << r.certificate << ',' << csv_field(r.detail) << '\n';
	}
	return out.str();
}

Json sweep_summary_json(const SweepResult& result) {
	const auto& c = result.config;
	Json j{{"count", c.count},
	       {"seed", c.seed},
	       {"n_range", {c.n_min, c.n_max}},
	       {"m_range", {c.m_min, c.m_max}},
	       {"endpoint_grid", c.endpoint_grid},
	       {"profit_mode", to_string(c.mode)},
	       {"max_ratio", result.max_ratio.str()},
	       {"max_ratio_decimal", to_decimal(result.max_ratio)},
	       {"certificate_failures", result.certificate_failures},
	       {"construction_failures", result.construction_failures},
	       {"opt_errors", result.opt_errors},
	       {"counting_violations", result.counting_violations},
	       {"h_map_failures", result.h_map_failures},
	       {"repaired_instances", result.repaired_instances}};
	if (result.argmax_index) {
		j["argmax_index"] = *result.argmax_index;
		j["argmax_instance"] = instance_to_json(gen_random(c, *result.argmax_index));
	}
	return j;
}

}  // namespace satsched

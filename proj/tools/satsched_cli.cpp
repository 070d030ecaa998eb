// satsched: command-line front end.
//
// Exit codes: 0 ok, 1 a check failed, 2 bad input.

#include <unistd.h>

#include <csignal>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "satsched/adversary.hpp"
#include "satsched/certificate_json.hpp"
#include "satsched/certify.hpp"
#include "satsched/errors.hpp"
#include "satsched/greedy.hpp"
#include "satsched/json_io.hpp"
#include "satsched/opt.hpp"
#include "satsched/protocol.hpp"
#include "satsched/random_instances.hpp"
#include "satsched/svg.hpp"
#include "satsched/sweep.hpp"

using namespace satsched;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kBadInput = 2;

void write_file(const std::string& path, const std::string& text) {
	std::ofstream out(path);
	if (!out) throw InputError("cannot write " + path);
	out << text;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::unique_ptr<Responder> make_responder(const std::string& spec) {
	if (spec == "gr") return std::make_unique<GreedyResponder>();
	if (spec == "stdio") return std::make_unique<ChannelResponder>(STDIN_FILENO, STDOUT_FILENO, "stdio");
	if (spec.rfind("fixed:", 0) == 0) return std::make_unique<FixedResponder>(std::stoi(spec.substr(6)));
	if (spec.rfind("tcp:", 0) == 0) return connect_tcp(spec);
	throw InputError("unknown responder: " + spec + " (gr, fixed:<machine>, stdio, tcp:<host>:<port>)");
}

CertifyMode parse_certify_mode(const std::string& s) {
	if (s == "auto") return CertifyMode::automatic;
	if (s == "general") return CertifyMode::general;
	if (s == "m2") return CertifyMode::m2;
	if (s == "both") return CertifyMode::both;
	if (s == "none") return CertifyMode::none;
	throw InputError("unknown certify mode: " + s);
}

M2Variant parse_variant(const std::string& s) {
	if (s == "either") return M2Variant::ge_either_machine;
	if (s == "own") return M2Variant::own_machine;
	if (s == "final-ownership") return M2Variant::final_ownership;
	if (s == "final-schedule") return M2Variant::final_schedule;
	throw InputError("unknown m2 variant: " + s);
}

}  // namespace

int main(int argc, char** argv) {
	// A peer that hangs up should surface as a protocol error, not kill the process.
	std::signal(SIGPIPE, SIG_IGN);
	CLI::App app{"Online interval scheduling with shared machine power"};
	app.require_subcommand(1);

	std::string instance_path;
	SearchLimits limits;

	auto* gr_cmd = app.add_subcommand("gr", "Run the greedy algorithm");
	bool trace = false;
	gr_cmd->add_option("--instance", instance_path, "Instance JSON")->required();
	gr_cmd->add_flag("--trace", trace, "Per-job gains and choices on stderr, one JSON line each");

	auto* opt_cmd = app.add_subcommand("opt", "Exhaustive offline optimum");
	opt_cmd->add_option("--instance", instance_path, "Instance JSON")->required();
	opt_cmd->add_option("--max-states", limits.max_states, "Search node budget");
	opt_cmd->add_option("--max-jobs", limits.max_jobs, "Largest instance accepted");

	auto* ratio_cmd = app.add_subcommand("ratio", "OPT / GR on one instance");
	ratio_cmd->add_option("--instance", instance_path, "Instance JSON")->required();
	ratio_cmd->add_option("--max-states", limits.max_states, "Search node budget");

	auto* cert_cmd = app.add_subcommand("certify", "Build and verify a charging certificate");
	std::string cert_mode = "auto", svg_out, variant = "either";
	bool no_repair = false;
	cert_cmd->add_option("--instance", instance_path, "Instance JSON")->required();
	cert_cmd->add_option("--mode", cert_mode, "general | m2 | auto");
	cert_cmd->add_option("--m2-variant", variant, "either | own | final-ownership | final-schedule");
	cert_cmd->add_flag("--no-repair", no_repair, "Fail instead of repairing a blocked 3p-assignment");
	cert_cmd->add_option("--emit-svg", svg_out, "Also render the classified schedules");

	auto* adv_cmd = app.add_subcommand("adversary", "Play a lower-bound construction");
	std::string construction, against = "gr", transcript_out;
	std::string x_text, y_text, eps_text = "1/10";
	int adv_m = 3, max_c = 3;
	long a1 = 64;
	adv_cmd->add_option("--construction", construction, "gr-tight-m2 | uniform-m2 | uniform-general | general-profit")
	    ->required();
	adv_cmd->add_option("--against", against, "gr | fixed:<machine> | stdio | tcp:<host>:<port>");
	adv_cmd->add_option("--m", adv_m, "Machines (uniform-general)");
	adv_cmd->add_option("--x", x_text, "Parameter x as p/q");
	adv_cmd->add_option("--y", y_text, "Parameter y as p/q (uniform-m2)");
	adv_cmd->add_option("--maxc", max_c, "MaxC (general-profit)");
	adv_cmd->add_option("--a1", a1, "a_1 (general-profit)");
	adv_cmd->add_option("--epsilon", eps_text, "epsilon (gr-tight-m2)");
	adv_cmd->add_option("--transcript", transcript_out, "Write the transcript here instead of stdout");

	auto* gen_cmd = app.add_subcommand("gen", "Random instances");
	SweepConfig config;
	std::uint64_t index = 0;
	std::string profit_mode = "uniform";
	auto add_config = [&](CLI::App* cmd) {
		cmd->add_option("--seed", config.seed, "Seed");
		cmd->add_option("--n-min", config.n_min, "Fewest jobs");
		cmd->add_option("--n-max", config.n_max, "Most jobs");
		cmd->add_option("--m-min", config.m_min, "Fewest machines");
		cmd->add_option("--m-max", config.m_max, "Most machines");
		cmd->add_option("--grid", config.endpoint_grid, "Endpoint denominator");
		cmd->add_option("--horizon", config.horizon, "Release times fall in [0, horizon)");
		cmd->add_option("--max-length", config.max_length, "Longest job");
		cmd->add_option("--profit-mode", profit_mode, "uniform | explicit");
	};
	add_config(gen_cmd);
	gen_cmd->add_option("--index", index, "First index");
	config.count = 1;
	gen_cmd->add_option("--count", config.count, "Number of instances (JSON lines when > 1)");

	auto* sweep_cmd = app.add_subcommand("sweep", "Random-instance ratio and certificate sweep");
	add_config(sweep_cmd);
	std::size_t sweep_count = 100;
	std::string csv_out, summary_out, sweep_certify = "auto";
	unsigned threads = 0;
	sweep_cmd->add_option("--count", sweep_count, "Number of instances");
	sweep_cmd->add_option("--certify", sweep_certify, "auto | general | m2 | both | none");
	sweep_cmd->add_option("--csv", csv_out, "CSV output path");
	sweep_cmd->add_option("--summary", summary_out, "Summary JSON path (default stdout)");
	sweep_cmd->add_option("--threads", threads, "Workers (capped by SATSCHED_THREADS)");
	sweep_cmd->add_flag("--no-repair", no_repair, "Count blocked 3p-assignments as failures");

	auto* render_cmd = app.add_subcommand("render", "SVG of the GR and OPT schedules");
	std::string render_out;
	bool classify_flag = false;
	render_cmd->add_option("--instance", instance_path, "Instance JSON")->required();
	render_cmd->add_option("--out", render_out, "SVG path (default stdout)");
	render_cmd->add_flag("--classify", classify_flag, "Color c/ge/oe/n pieces");

	auto* play_cmd = app.add_subcommand("play", "Algorithm side of the wire protocol");
	std::string algorithm = "gr";
	int listen_port = -1;
	play_cmd->add_option("--algorithm", algorithm, "gr | fixed:<machine>");
	play_cmd->add_option("--listen", listen_port, "Serve one TCP session on this port instead of stdio");

	CLI11_PARSE(app, argc, argv);

	try {
		if (*gr_cmd) {
			const Instance inst = load_instance(instance_path);
			const GreedyRun run = run_gr(inst);
			if (trace) {
				for (const auto& step : run.trace) {
					Json gains = Json::array();
					for (const auto& g : step.gains) gains.push_back(g.str());
					std::cerr << Json{{"job", step.job}, {"gains", gains}, {"chosen", step.chosen}}.dump() << "\n";
				}
			}
			emit({{"schedule", schedule_to_json(inst, run.schedule)}, {"report", report_to_json(inst, run.report)}});
			return kOk;
		}
		if (*opt_cmd) {
			const Instance inst = load_instance(instance_path);
			const OptResult r = brute_force_opt(inst, limits);
			emit({{"schedule", schedule_to_json(inst, r.schedule)},
			      {"value", r.value.str()},
			      {"states", r.states},
			      {"report", report_to_json(inst, profit_report(inst, r.schedule))}});
			return kOk;
		}
		if (*ratio_cmd) {
			const Instance inst = load_instance(instance_path);
			const Rational gr = run_gr(inst).report.total;
			const Rational opt = brute_force_opt(inst, limits).value;
			const Rational ratio = gr.is_zero() ? Rational(0) : opt / gr;
			emit({{"gr", gr.str()}, {"opt", opt.str()}, {"ratio", ratio.str()}, {"ratio_decimal", to_decimal(ratio)}});
			return kOk;
		}
		if (*cert_cmd) {
			const Instance inst = load_instance(instance_path);
			const GreedyRun gr = run_gr(inst);
			const OptResult opt = brute_force_opt(inst, limits);
			const bool two = cert_mode == "m2" || (cert_mode == "auto" && inst.machines == 2);
			if (cert_mode != "m2" && cert_mode != "general" && cert_mode != "auto")
				throw InputError("unknown mode: " + cert_mode);
			const Classification classes = classify(inst, gr.schedule, opt.schedule);
			Json out{{"gr_schedule", schedule_to_json(inst, gr.schedule)},
			         {"opt_schedule", schedule_to_json(inst, opt.schedule)},
			         {"classification", classification_to_json(inst, classes)}};
			if (!svg_out.empty())
				write_file(svg_out, emit_schedule_svg(inst, {{"GR", gr.schedule}, {"OPT", opt.schedule}}, &classes));
			AssignmentCertificate cert;
			try {
				cert = two ? assignment_routine_m2(inst, gr.schedule, opt.schedule, {parse_variant(variant), !no_repair})
				           : assignment_routine_general(inst, gr.schedule, opt.schedule);
			} catch (const CertificateError& e) {
				out["construction_error"] = e.what();
				emit(out);
				return kCheckFailed;
			}
			const VerificationReport rep = verify_certificate(cert, inst, gr.schedule, opt.schedule);
			out["certificate"] = certificate_to_json(inst, cert);
			out["verification"] = verification_to_json(rep);
			emit(out);
			return rep.passed() ? kOk : kCheckFailed;
		}
		if (*adv_cmd) {
			const auto responder = make_responder(against);
			Transcript t;
			if (construction == "gr-tight-m2") {
				const Instance inst = gen_gr_tight_m2(Rational::parse(eps_text));
				// Static input: the responder answers each job in turn.
				Schedule online;
				online.machine_of.assign(inst.size(), 0);
				for (std::size_t i = 0; i < inst.size(); ++i) {
					const MachineIndex a = responder->respond(inst.jobs[i], inst.machines, inst.profit_mode);
					if (a < 1 || a > inst.machines) throw ProtocolError("invalid machine " + std::to_string(a));
					online.machine_of[i] = a;
					online.placement_order.push_back(i);
				}
				const OptResult opt = brute_force_opt(inst, limits);
				t.construction = construction;
				t.responder = responder->name();
				t.instance = inst;
				t.online = online;
				t.online_total = profit_report(inst, online).total;
				t.reference_kind = "OPT";
				t.reference = opt.schedule;
				t.reference_total = opt.value;
				t.ratio = t.online_total.is_zero() ? Rational(0) : opt.value / t.online_total;
				t.branch = "static";
				t.parameters.emplace_back("epsilon", Rational::parse(eps_text).str());
				responder->finish(transcript_to_json(t));
			} else if (construction == "uniform-m2") {
				const Rational x = x_text.empty() ? sqrt_convergent(2) : Rational::parse(x_text);
				const Rational y = y_text.empty() ? x : Rational::parse(y_text);
				t = adversary_uniform_m2(*responder, x, y, limits);
			} else if (construction == "uniform-general") {
				const Rational x = x_text.empty() ? default_uniform_general_x(adv_m) : Rational::parse(x_text);
				t = adversary_uniform_general(adv_m, *responder, x, limits);
			} else if (construction == "general-profit") {
				t = adversary_general_profit(*responder, max_c, a1);
			} else {
				throw InputError("unknown construction: " + construction);
			}
			const Json j = transcript_to_json(t);
			if (!transcript_out.empty()) write_file(transcript_out, j.dump(2) + "\n");
			else if (against == "stdio") std::cerr << j.dump(2) << "\n";
			else emit(j);
			return kOk;
		}
		if (*gen_cmd) {
			config.mode = profit_mode == "explicit" ? ProfitMode::explicit_profit : ProfitMode::uniform;
			check_config(config);
			for (std::size_t k = 0; k < config.count; ++k) {
				const Json j = instance_to_json(gen_random(config, index + k));
				std::cout << (config.count == 1 ? j.dump(2) : j.dump()) << "\n";
			}
			return kOk;
		}
		if (*sweep_cmd) {
			config.count = sweep_count;
			config.mode = profit_mode == "explicit" ? ProfitMode::explicit_profit : ProfitMode::uniform;
			SweepOptions options;
			options.certify = parse_certify_mode(sweep_certify);
			options.threads = threads;
			options.limits = limits;
			options.m2.repair = !no_repair;
			const SweepResult result = sweep(config, options);
			if (!csv_out.empty()) write_file(csv_out, sweep_csv(result));
			const Json summary = sweep_summary_json(result);
			if (!summary_out.empty()) write_file(summary_out, summary.dump(2) + "\n");
			else emit(summary);
			bool ok = result.certificate_failures == 0;
			for (const auto& r : result.rows) {
				const Rational bound = r.m == 1 ? Rational(1) : r.m == 2 ? Rational(4, 3) : Rational(3);
				if (!r.opt_error && bound < r.ratio) ok = false;
			}
			return ok ? kOk : kCheckFailed;
		}
		if (*render_cmd) {
			const Instance inst = load_instance(instance_path);
			const GreedyRun gr = run_gr(inst);
			const OptResult opt = brute_force_opt(inst, limits);
			std::optional<Classification> classes;
			if (classify_flag) classes = classify(inst, gr.schedule, opt.schedule);
			const std::string svg =
			    emit_schedule_svg(inst, {{"GR", gr.schedule}, {"OPT", opt.schedule}}, classes ? &*classes : nullptr);
			if (render_out.empty()) std::cout << svg;
			else write_file(render_out, svg);
			return kOk;
		}
		if (*play_cmd) {
			const auto algo = make_responder(algorithm);
			std::optional<Json> report;
			if (listen_port >= 0) {
				report = serve_tcp_once(listen_port, *algo, [](int port) { std::cerr << "listening on " << port << "\n"; });
			} else {
				report = answer_jobs(STDIN_FILENO, STDOUT_FILENO, *algo);
			}
			if (report) std::cerr << report->dump() << "\n";
			return kOk;
		}
	} catch (const InputError& e) {
		std::cerr << "input error: " << e.what() << "\n";
		return kBadInput;
	} catch (const ProtocolError& e) {
		std::cerr << "protocol error: " << e.what() << "\n";
		return kBadInput;
	} catch (const Json::exception& e) {
		std::cerr << "input error: " << e.what() << "\n";
		return kBadInput;
	} catch (const std::invalid_argument& e) {
		std::cerr << "input error: " << e.what() << "\n";
		return kBadInput;
	} catch (const BudgetExceeded& e) {
		std::cerr << "budget exceeded: " << e.what() << "\n";
		return kCheckFailed;
	} catch (const CertificateError& e) {
		std::cerr << "certificate error: " << e.what() << "\n";
		return kCheckFailed;
	}
	return kOk;
}

// Extension module: JSON text in, JSON text out. The Python package wraps these with dicts.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "satsched/adversary.hpp"
#include "satsched/certificate_json.hpp"
#include "satsched/errors.hpp"
#include "satsched/greedy.hpp"
#include "satsched/json_io.hpp"
#include "satsched/opt.hpp"
#include "satsched/random_instances.hpp"
#include "satsched/svg.hpp"
#include "satsched/sweep.hpp"

namespace py = pybind11;
using namespace satsched;

namespace {

Instance parse_instance(const std::string& text) {
	Json doc;
	try {
		doc = Json::parse(text);
	} catch (const Json::exception& e) {
		throw InputError(std::string("instance is not JSON: ") + e.what());
	}
	return instance_from_json(doc);
}

SearchLimits limits_of(std::size_t max_jobs, std::uint64_t max_states) {
	SearchLimits l;
	l.max_jobs = max_jobs;
	l.max_states = max_states;
	return l;
}

M2Variant variant_of(const std::string& s) {
	if (s == "either") return M2Variant::ge_either_machine;
	if (s == "own") return M2Variant::own_machine;
	if (s == "final-ownership") return M2Variant::final_ownership;
	if (s == "final-schedule") return M2Variant::final_schedule;
	throw InputError("unknown two-machine variant: " + s);
}

std::string gr(const std::string& text) {
	const Instance inst = parse_instance(text);
	const GreedyRun run = run_gr(inst);
	Json trace = Json::array();
	for (const auto& step : run.trace) {
		Json gains = Json::array();
		for (const auto& g : step.gains) gains.push_back(g.str());
		trace.push_back({{"job", step.job}, {"gains", gains}, {"chosen", step.chosen}});
	}
	return Json{{"schedule", schedule_to_json(inst, run.schedule)},
	            {"report", report_to_json(inst, run.report)},
	            {"trace", trace}}
	    .dump();
}

std::string opt(const std::string& text, std::size_t max_jobs, std::uint64_t max_states) {
	const Instance inst = parse_instance(text);
	const OptResult r = brute_force_opt(inst, limits_of(max_jobs, max_states));
	return Json{{"schedule", schedule_to_json(inst, r.schedule)}, {"value", r.value.str()}, {"states", r.states}}.dump();
}

std::string ratio(const std::string& text, std::size_t max_jobs, std::uint64_t max_states) {
	const Instance inst = parse_instance(text);
	const Rational g = run_gr(inst).report.total;
	const Rational o = brute_force_opt(inst, limits_of(max_jobs, max_states)).value;
	const Rational r = g.is_zero() ? Rational(0) : o / g;
	return Json{{"gr", g.str()}, {"opt", o.str()}, {"ratio", r.str()}, {"ratio_decimal", to_decimal(r)}}.dump();
}

std::string certify(const std::string& text, const std::string& mode, const std::string& variant, bool repair) {
	const Instance inst = parse_instance(text);
	if (mode != "auto" && mode != "general" && mode != "m2") throw InputError("unknown mode: " + mode);
	const bool two = mode == "m2" || (mode == "auto" && inst.machines == 2);
	const Schedule g = run_gr(inst).schedule;
	const Schedule o = brute_force_opt(inst).schedule;
	const Classification classes = classify(inst, g, o);
	Json out{{"classification", classification_to_json(inst, classes)}};
	const AssignmentCertificate cert =
	    two ? assignment_routine_m2(inst, g, o, {variant_of(variant), repair}) : assignment_routine_general(inst, g, o);
	out["certificate"] = certificate_to_json(inst, cert);
	out["verification"] = verification_to_json(verify_certificate(cert, inst, g, o));
	return out.dump();
}

SweepConfig config_of(const py::dict& d) {
	SweepConfig c;
	for (const auto& [key, value] : d) {
		const std::string k = py::str(key);
		if (k == "count") c.count = value.cast<std::size_t>();
		else if (k == "seed") c.seed = value.cast<std::uint64_t>();
		else if (k == "n_min") c.n_min = value.cast<int>();
		else if (k == "n_max") c.n_max = value.cast<int>();
		else if (k == "m_min") c.m_min = value.cast<int>();
		else if (k == "m_max") c.m_max = value.cast<int>();
		else if (k == "endpoint_grid") c.endpoint_grid = value.cast<int>();
		else if (k == "horizon") c.horizon = value.cast<int>();
		else if (k == "max_length") c.max_length = value.cast<int>();
		else if (k == "mode") {
			const std::string m = value.cast<std::string>();
			if (m == "uniform") c.mode = ProfitMode::uniform;
			else if (m == "explicit") c.mode = ProfitMode::explicit_profit;
			else throw InputError("unknown profit mode: " + m);
		} else
			throw InputError("unknown config key: " + k);
	}
	check_config(c);
	return c;
}

std::string generate(const py::dict& config, std::uint64_t index) {
	return instance_to_json(gen_random(config_of(config), index)).dump();
}

std::string run_sweep(const py::dict& config, const std::string& certify_mode, bool repair, unsigned threads) {
	SweepOptions options;
	if (certify_mode == "auto") options.certify = CertifyMode::automatic;
	else if (certify_mode == "general") options.certify = CertifyMode::general;
	else if (certify_mode == "m2") options.certify = CertifyMode::m2;
	else if (certify_mode == "both") options.certify = CertifyMode::both;
	else if (certify_mode == "none") options.certify = CertifyMode::none;
	else throw InputError("unknown certify mode: " + certify_mode);
	options.m2.repair = repair;
	options.threads = threads;
	const SweepConfig c = config_of(config);
	SweepResult r;
	{
		py::gil_scoped_release release;
		r = sweep(c, options);
	}
	return sweep_summary_json(r).dump();
}

std::unique_ptr<Responder> responder_of(const py::object& against) {
	if (py::isinstance<py::str>(against)) {
		const std::string s = against.cast<std::string>();
		if (s == "gr") return std::make_unique<GreedyResponder>();
		if (s.rfind("fixed:", 0) == 0) return std::make_unique<FixedResponder>(std::stoi(s.substr(6)));
		throw InputError("unknown responder: " + s);
	}
	if (py::isinstance<py::int_>(against)) return std::make_unique<FixedResponder>(against.cast<MachineIndex>());
	if (!PyCallable_Check(against.ptr())) throw InputError("responder must be 'gr', 'fixed:N', an int or a callable");
	py::function fn = against.cast<py::function>();
	return std::make_unique<CallbackResponder>(
	    [fn](const Job& j, int machines) {
		    py::dict job;
		    job["id"] = j.id;
		    job["r"] = j.release.str();
		    job["d"] = j.deadline.str();
		    job["v"] = j.profit.str();
		    return fn(job, machines).cast<MachineIndex>();
	    },
	    "python");
}

std::string adversary(const std::string& construction, const py::object& against, int m, const std::string& x,
                      const std::string& y, int max_c, long a1) {
	const auto responder = responder_of(against);
	Transcript t;
	if (construction == "uniform-m2") {
		const Rational xv = x.empty() ? sqrt_convergent(2) : Rational::parse(x);
		t = adversary_uniform_m2(*responder, xv, y.empty() ? xv : Rational::parse(y));
	} else if (construction == "uniform-general") {
		t = adversary_uniform_general(m, *responder, x.empty() ? default_uniform_general_x(m) : Rational::parse(x));
	} else if (construction == "general-profit") {
		t = adversary_general_profit(*responder, max_c, a1);
	} else {
		throw InputError("unknown construction: " + construction);
	}
	return transcript_to_json(t).dump();
}

std::string tight(const std::string& eps) { return instance_to_json(gen_gr_tight_m2(Rational::parse(eps))).dump(); }

std::string render(const std::string& text, bool classified) {
	const Instance inst = parse_instance(text);
	const Schedule g = run_gr(inst).schedule;
	const Schedule o = brute_force_opt(inst).schedule;
	if (!classified) return emit_schedule_svg(inst, {{"GR", g}, {"OPT", o}});
	const Classification classes = classify(inst, g, o);
	return emit_schedule_svg(inst, {{"GR", g}, {"OPT", o}}, &classes);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
	m.doc() = "Exact greedy, optimum, certificate and adversary routines for interval scheduling with shared profit.";

	py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
	py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
	py::register_exception<ProtocolError>(m, "ProtocolError", PyExc_RuntimeError);
	py::register_exception<CertificateError>(m, "CertificateError", PyExc_RuntimeError);

	const SearchLimits defaults;
	m.def("gr", &gr, py::arg("instance"));
	m.def("opt", &opt, py::arg("instance"), py::arg("max_jobs") = defaults.max_jobs,
	      py::arg("max_states") = defaults.max_states);
	m.def("ratio", &ratio, py::arg("instance"), py::arg("max_jobs") = defaults.max_jobs,
	      py::arg("max_states") = defaults.max_states);
	m.def("certify", &certify, py::arg("instance"), py::arg("mode") = "auto", py::arg("variant") = "either",
	      py::arg("repair") = true);
	m.def("generate", &generate, py::arg("config"), py::arg("index"));
	m.def("sweep", &run_sweep, py::arg("config"), py::arg("certify") = "auto", py::arg("repair") = true,
	      py::arg("threads") = 1);
	m.def("adversary", &adversary, py::arg("construction"), py::arg("against") = "gr", py::arg("m") = 3,
	      py::arg("x") = "", py::arg("y") = "", py::arg("max_c") = 3, py::arg("a1") = 64);
	m.def("tight_instance", &tight, py::arg("epsilon"));
	m.def("render_svg", &render, py::arg("instance"), py::arg("classify") = true);
}

#include "satsched/certificate_json.hpp"

namespace satsched {

namespace {

Json span_json(const Interval& iv) { return Json::array({iv.lo.str(), iv.hi.str()}); }

}  // namespace

Json classification_to_json(const Instance& instance, const Classification& classes) {
	Json out = Json::array();
	for (const auto& seg : classes.segments) {
		out.push_back({{"job", instance.jobs[seg.job].id},
		               {"interval", span_json(seg.span)},
		               {"class", to_string(seg.cls)},
		               {"gr_machine", seg.gr_machine},
		               {"opt_machine", seg.opt_machine}});
	}
	return out;
}

Json certificate_to_json(const Instance& instance, const AssignmentCertificate& cert) {
	Json pieces = Json::array();
	for (const auto& p : cert.pieces) {
		pieces.push_back({{"source_job", instance.jobs[p.source_job].id},
		                  {"source", span_json(p.source)},
		                  {"target_job", instance.jobs[p.target_job].id},
		                  {"target_machine", p.target_machine},
		                  {"target", span_json(p.target)},
		                  {"tag", to_string(p.tag)},
		                  {"target_class", to_string(p.target_class)},
		                  {"weight", p.weight.str()}});
	}
	const bool general = cert.kind == CertificateKind::general;
	Json summary{{"V_c", cert.summary.v_c.str()}, {"V_ge", cert.summary.v_ge.str()}};
	summary[general ? "V_oe" : "V_oe_bar"] = cert.summary.v_oe.str();
	summary[general ? "V_oe_prime" : "V_oe_bar_prime"] = cert.summary.v_oe_prime.str();
	return {{"kind", to_string(cert.kind)},
	        {"pieces", pieces},
	        {"summary", summary},
	        {"stats",
	         {{"h_evaluations", cert.stats.h_evaluations},
	          {"direct_steps", cert.stats.direct_steps},
	          {"fallback_steps", cert.stats.fallback_steps},
	          {"counting_checks", cert.stats.counting_checks},
	          {"counting_violations", cert.stats.counting_violations},
          {"repairs", cert.stats.repairs}}}};
}

Json verification_to_json(const VerificationReport& report) {
	Json checks = Json::array();
	for (const auto& c : report.checks) {
		Json item{{"name", c.name}, {"passed", c.passed}};
		if (!c.passed) item["detail"] = c.detail;
		checks.push_back(item);
	}
	return {{"passed", report.passed()},
	        {"checks", checks},
	        {"V_GR", report.v_gr.str()},
	        {"V_OPT", report.v_opt.str()},
	        {"V_c", report.v_c.str()},
	        {"V_ge", report.v_ge.str()},
	        {"V_oe", report.v_oe.str()},
	        {"V_oe_prime", report.v_oe_prime.str()}};
}

}  // namespace satsched

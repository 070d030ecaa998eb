#include "satsched/json_io.hpp"

#include <fstream>
#include <sstream>

#include "satsched/errors.hpp"

namespace satsched {

const char* to_string(ProfitMode mode) { return mode == ProfitMode::uniform ? "uniform" : "explicit"; }

Rational rational_from_json(const Json& value) {
	try {
		if (value.is_string()) return Rational::parse(value.get<std::string>());
		if (value.is_number_integer()) return Rational(value.get<long>());
	} catch (const std::invalid_argument& e) {
		throw InputError(e.what());
	}
	throw InputError("expected a rational string or integer, got " + value.dump());
}

RawInstance raw_instance_from_json(const Json& doc) {
	if (!doc.is_object()) throw InputError("instance must be a JSON object");
	RawInstance raw;
	try {
		if (!doc.contains("m") || !doc.contains("jobs")) throw InputError("instance requires 'm' and 'jobs'");
		raw.machines = doc.at("m").get<int>();
		const std::string mode = doc.value("profit_mode", std::string("uniform"));
		if (mode == "uniform") raw.profit_mode = ProfitMode::uniform;
		else if (mode == "explicit") raw.profit_mode = ProfitMode::explicit_profit;
		else throw InputError("profit_mode must be 'uniform' or 'explicit', got '" + mode + "'");

		JobId next_id = 1;
		for (const auto& j : doc.at("jobs")) {
			RawJob rj;
			rj.id = j.contains("id") ? j.at("id").get<JobId>() : next_id;
			next_id = rj.id + 1;
			rj.release = rational_from_json(j.at("r"));
			rj.deadline = rational_from_json(j.at("d"));
			if (j.contains("v") && !j.at("v").is_null()) rj.profit = rational_from_json(j.at("v"));
			raw.jobs.push_back(std::move(rj));
		}
	} catch (const nlohmann::json::exception& e) {
		throw InputError(std::string("malformed instance: ") + e.what());
	}
	return raw;
}

Instance instance_from_json(const Json& doc) { return validate_instance(raw_instance_from_json(doc)); }

Instance load_instance(const std::string& path) {
	std::ifstream in(path);
	if (!in) throw InputError("cannot open instance file '" + path + "'");
	Json doc;
	try {
		doc = Json::parse(in);
	} catch (const nlohmann::json::parse_error& e) {
		throw InputError("'" + path + "' is not valid JSON: " + e.what());
	}
	return instance_from_json(doc);
}

Json instance_to_json(const Instance& instance) {
	Json jobs = Json::array();
	for (const auto& j : instance.jobs)
		jobs.push_back({{"id", j.id}, {"r", j.release.str()}, {"d", j.deadline.str()}, {"v", j.profit.str()}});
	return {{"m", instance.machines}, {"profit_mode", to_string(instance.profit_mode)}, {"jobs", std::move(jobs)}};
}

Json schedule_to_json(const Instance& instance, const Schedule& schedule) {
	Json assignment = Json::object();
	for (std::size_t i = 0; i < instance.size(); ++i)
		if (schedule.placed(i)) assignment[std::to_string(instance.jobs[i].id)] = schedule.machine_of[i];
	Json order = Json::array();
	for (std::size_t pos : schedule.placement_order) order.push_back(instance.jobs[pos].id);
	return {{"assignment", std::move(assignment)}, {"placement_order", std::move(order)}};
}

Json report_to_json(const Instance& instance, const ProfitReport& report) {
	Json segments = Json::array();
	for (const auto& s : report.per_segment)
		segments.push_back({{"job", instance.jobs[s.job].id},
		                    {"machine", s.machine},
		                    {"lo", s.lo.str()},
		                    {"hi", s.hi.str()},
		                    {"contribution", s.contribution.str()}});
	Json per_job = Json::object();
	for (std::size_t i = 0; i < instance.size(); ++i) per_job[std::to_string(instance.jobs[i].id)] = report.per_job[i].str();
	return {{"per_segment", std::move(segments)}, {"per_job", std::move(per_job)}, {"total", report.total.str()}};
}

}  // namespace satsched

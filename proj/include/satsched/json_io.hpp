#pragma once

#include <string>

#include <json.hpp>

#include "satsched/model.hpp"

namespace satsched {

using Json = nlohmann::ordered_json;

/// Accepts "p/q", decimal strings, and JSON integers.
Rational rational_from_json(const Json& value);
inline Json rational_to_json(const Rational& r) { return r.str(); }

RawInstance raw_instance_from_json(const Json& doc);
/// Parse and validate; throws InputError on any schema or model violation.
Instance instance_from_json(const Json& doc);
Instance load_instance(const std::string& path);

Json instance_to_json(const Instance& instance);
/// `{"assignment": {"<id>": machine}, "placement_order": [ids]}`.
Json schedule_to_json(const Instance& instance, const Schedule& schedule);
Json report_to_json(const Instance& instance, const ProfitReport& report);

const char* to_string(ProfitMode mode);

}  // namespace satsched

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "satsched/certify.hpp"

namespace satsched {

/// Gantt-style rendering: one block per (title, schedule), one lane per machine,
/// one rectangle per job. With a classification, each job rectangle is filled by
/// class: c blue, ge green, oe red, n yellow.
std::string emit_schedule_svg(const Instance& instance, const std::vector<std::pair<std::string, Schedule>>& schedules,
                              const Classification* classes = nullptr);

}  // namespace satsched

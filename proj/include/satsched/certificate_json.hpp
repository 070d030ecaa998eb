#pragma once

#include "satsched/certify.hpp"
#include "satsched/json_io.hpp"

namespace satsched {

Json classification_to_json(const Instance& instance, const Classification& classes);
Json certificate_to_json(const Instance& instance, const AssignmentCertificate& cert);
Json verification_to_json(const VerificationReport& report);

}  // namespace satsched

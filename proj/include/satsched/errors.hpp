#pragma once

#include <stdexcept>
#include <string>

namespace satsched {

/// Malformed or inconsistent input (instance files, CLI arguments). Maps to exit code 2.
class InputError : public std::invalid_argument {
public:
	using std::invalid_argument::invalid_argument;
};

/// Exhaustive search exceeded its state budget.
class BudgetExceeded : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// An online responder broke the placement protocol.
class ProtocolError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// A charging routine found no free target for an assignment it must make.
/// Signals an internal inconsistency, never a property of the input.
class CertificateError : public std::logic_error {
public:
	using std::logic_error::logic_error;
};

}  // namespace satsched

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "satsched/json_io.hpp"
#include "satsched/opt.hpp"
#include "satsched/protocol.hpp"

namespace satsched {

/// Record of one adversary session.
struct Transcript {
	std::string construction;
	std::string responder;
	Instance instance;
	Schedule online;
	Rational online_total;
	/// "OPT" (exhaustive search) or "OFF" (the construction's explicit offline schedule).
	std::string reference_kind;
	Schedule reference;
	Rational reference_total;
	/// reference_total / online_total; zero when the online total is zero.
	Rational ratio;
	std::string branch;
	std::vector<std::pair<std::string, std::string>> parameters;
	std::vector<std::string> notes;

	const std::string* parameter(const std::string& key) const;
};

Json transcript_to_json(const Transcript& t);

/// Four jobs (0,1), (2-eps,2), (1,2), (0,2) on two machines, uniform profits.
Instance gen_gr_tight_m2(const Rational& epsilon);

/// Two-machine uniform construction: J1=(0,1), J2=(1+x,2+x), then either
/// (0,2+x) when the online algorithm split J1/J2, or (1-y,1+x), (1,1+x+y).
Transcript adversary_uniform_m2(Responder& online, const Rational& x, const Rational& y,
                                const SearchLimits& limits = {});

/// General-m uniform construction with m' = ceil(m/2) copies of (0,1) and of
/// (1+x,2+x), followed by either m'' = floor(m/2) copies of (0,2+x) or m'' copies
/// of (1-x,1+x) then of (1,1+2x). A cloneable responder plays both continuations
/// and the one worse for it is reported. The reference is exhaustive OPT for
/// m <= `brute_force_max_m`, the construction's explicit schedule otherwise.
Transcript adversary_uniform_general(int m, Responder& online, const Rational& x, const SearchLimits& limits = {},
                                     int brute_force_max_m = 4);

/// Lower-bound quantities of the general-m construction for a given split count a.
Rational uniform_general_bound_sigma1(int m, int a, const Rational& x);
Rational uniform_general_bound_sigma2(int m, int a, const Rational& x);

/// One row of the reference table of lower bounds for m >= 3.
struct LowerBoundRow {
	int m = 0;  // 0 stands for m -> infinity
	std::string bound_text;
	double claimed_decimal = 0;  // the decimal printed next to the expression
	std::string a_text;
	std::string x_text;
	Rational x;  // exact, or a convergent-based approximation
};
const std::vector<LowerBoundRow>& lower_bound_table();
/// Default x for the general-m construction (the table's x for that m, else sqrt 2).
Rational default_uniform_general_x(int m);

/// Two-machine general-profit construction (all profits one), played until the
/// online algorithm keeps a whole batch on its heavier machine or MaxC batches pass.
/// Stops with BudgetExceeded once more than `max_jobs` jobs would be emitted.
Transcript adversary_general_profit(Responder& online, int max_c, long a1, std::size_t max_jobs = 200000);

}  // namespace satsched

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "satsched/adversary.hpp"
#include "satsched/errors.hpp"
#include "satsched/greedy.hpp"

using namespace satsched;

namespace {

std::vector<Rational> split_rationals(const std::string& text) {
	std::vector<Rational> out;
	std::stringstream in(text);
	std::string item;
	while (std::getline(in, item, ',')) out.push_back(Rational::parse(item));
	return out;
}

Rational param(const Transcript& t, const std::string& key) {
	const std::string* v = t.parameter(key);
	REQUIRE_MESSAGE(v != nullptr, key);
	return Rational::parse(*v);
}

// Cloneable responder answering from a fixed script, then machine 1.
class Scripted final : public Responder {
public:
	explicit Scripted(std::vector<MachineIndex> script) : script_(std::move(script)) {}
	MachineIndex respond(const Job&, int, ProfitMode) override {
		return next_ < script_.size() ? script_[next_++] : 1;
	}
	std::unique_ptr<Responder> clone() const override { return std::make_unique<Scripted>(*this); }
	std::string name() const override { return "scripted"; }

private:
	std::vector<MachineIndex> script_;
	std::size_t next_ = 0;
};

}  // namespace

TEST_CASE("tight two-machine input") {
	const Instance inst = gen_gr_tight_m2(Rational(1, 10));
	CHECK(inst == testutil::tight_instance(Rational(1, 10)));
	CHECK(brute_force_opt(inst).value / run_gr(inst).report.total == Rational(40, 31));

	const Instance half = gen_gr_tight_m2(Rational(1, 2));
	CHECK(run_gr(half).report.total == Rational(7, 2));
	CHECK(brute_force_opt(half).value == 4);

	const Instance small = gen_gr_tight_m2(Rational(1, 1000));
	const Rational ratio = brute_force_opt(small).value / run_gr(small).report.total;
	CHECK(Rational(4, 3) - ratio < Rational(1, 500));

	CHECK_THROWS_AS(gen_gr_tight_m2(0), InputError);
	CHECK_THROWS_AS(gen_gr_tight_m2(1), InputError);
}

TEST_CASE("two-machine uniform construction") {
	const Rational x = sqrt_convergent(2);
	SUBCASE("greedy keeps J1 and J2 together") {
		GreedyResponder gr;
		const Transcript t = adversary_uniform_m2(gr, x, x);
		CHECK(t.branch == "sigma2");
		CHECK(t.instance.size() == 4);
		CHECK(t.online.machine_of == run_gr(t.instance).schedule.machine_of);
		CHECK_FALSE(t.notes.empty());
	}
	SUBCASE("x = y = 1 against greedy") {
		GreedyResponder gr;
		const Transcript t = adversary_uniform_m2(gr, 1, 1);
		CHECK(t.reference_total == 6);
		CHECK(t.ratio == Rational(6) / run_gr(t.instance).report.total);
		CHECK(t.notes.empty());
	}
	SUBCASE("a splitting responder triggers the first branch") {
		for (const Rational& xv : {Rational(1, 2), Rational(1), x, Rational(3)}) {
			CallbackResponder split([](const Job& j, int) { return j.id == 2 ? 2 : 1; });
			const Transcript t = adversary_uniform_m2(split, xv, xv);
			CHECK(t.branch == "sigma1");
			CHECK(t.reference_total == Rational(4) + xv);
			CHECK(Rational(1) <= t.ratio);
		}
	}
	SUBCASE("invalid answers are protocol errors") {
		FixedResponder bad(3);
		CHECK_THROWS_AS(adversary_uniform_m2(bad, x, x), ProtocolError);
	}
}

TEST_CASE("general-m uniform construction") {
	SUBCASE("greedy on three machines") {
		GreedyResponder gr;
		const Transcript t = adversary_uniform_general(3, gr, Rational(3));
		CHECK(Rational(1) <= t.ratio);
		CHECK(*t.parameter("selection") == "replayed both branches");
		CHECK(t.online.machine_of == run_gr(t.instance).schedule.machine_of);
		CHECK(t.reference_total == brute_force_opt(t.instance).value);
	}
	SUBCASE("first-branch optimum") {
		// S1 on machines 1,2 and S2 on machine 3: no machine holds both, so a = 0.
		for (const Rational& x : {Rational(1, 2), Rational(3), sqrt_convergent(2)}) {
			CallbackResponder online([](const Job& j, int) { return j.id <= 2 ? static_cast<MachineIndex>(j.id) : 3; });
			const Transcript t = adversary_uniform_general(3, online, x);
			REQUIRE(t.branch == "sigma1");
			CHECK(param(t, "a") == 0);
			CHECK(t.reference_total == Rational(4) + (Rational(2) + x));
			CHECK(param(t, "claimed_opt") == t.reference_total);
		}
	}
	SUBCASE("every branch against scripted responders satisfies its identities") {
		std::mt19937_64 rng(41);
		for (int it = 0; it < 30; ++it) {
			const int m = 3 + it % 2;
			std::vector<MachineIndex> script(8);
			for (auto& a : script) a = 1 + static_cast<MachineIndex>(rng() % static_cast<unsigned>(m));
			Scripted online(script);
			const Transcript t = adversary_uniform_general(m, online, Rational(3, 2));
			CHECK(Rational(1) <= t.ratio);
			CHECK(t.reference_total == brute_force_opt(t.instance).value);
			const int mp = (m + 1) / 2, mpp = m / 2;
			if (t.branch == "sigma1") CHECK(t.reference_total == Rational(2 * mp) + (Rational(2) + Rational(3, 2)) * Rational(mpp));
		}
	}
	SUBCASE("larger m uses the explicit offline schedule") {
		GreedyResponder gr;
		const Transcript t = adversary_uniform_general(7, gr, default_uniform_general_x(7));
		CHECK(t.reference_kind == "OFF");
		CHECK(Rational(1) <= t.ratio);
	}
	CHECK_THROWS_AS(adversary_uniform_general(2, *std::make_unique<GreedyResponder>(), 1), InputError);
}

TEST_CASE("lower-bound expressions") {
	const Rational r2 = sqrt_convergent(2);
	const Rational x4 = Rational(2) + Rational(2) * r2;
	CHECK(uniform_general_bound_sigma1(4, 0, x4).to_double() ==
	      doctest::Approx((22 - 2 * std::sqrt(2.0)) / 17).epsilon(1e-6));
	// m = 3, a = 0, x = 3: (4 + 5) / (3 + 4) by hand.
	CHECK(uniform_general_bound_sigma1(3, 0, Rational(3)) == Rational(9, 7));
	CHECK(uniform_general_bound_sigma2(3, 0, Rational(3)) == Rational(15, 19));
	CHECK(lower_bound_table().size() == 10);
	CHECK(lower_bound_table().front().bound_text == "7/6");
	CHECK(default_uniform_general_x(4) == x4);
	CHECK(default_uniform_general_x(40) == r2);
}

TEST_CASE("general-profit construction") {
	SUBCASE("greedy stops after one batch and the proof inequality holds") {
		Rational previous;
		for (int max_c : {2, 3, 4, 5}) {
			GreedyResponder gr;
			const Transcript t = adversary_general_profit(gr, max_c, 64);
			const Rational delta = param(t, "delta_FinC");
			CHECK(delta <= Rational(1, max_c));
			CHECK(Rational(1) / (delta + Rational(1, max_c)) <= t.ratio);
			CHECK(previous < t.ratio);
			previous = t.ratio;
			CHECK(param(t, "x1") + param(t, "x2") == Rational(2 * max_c));
			CHECK(param(t, "x2") <= param(t, "x1"));
		}
	}
	SUBCASE("always machine 1: batch kept on the heavy machine") {
		FixedResponder one(1);
		const Transcript t = adversary_general_profit(one, 3, 64);
		CHECK(param(t, "FinC") == 1);
		CHECK(t.branch == "light machine unused");
		const ProfitReport rep = profit_report(t.instance, t.online);
		Rational batch;
		for (std::size_t i = 6; i < t.instance.size(); ++i) batch += rep.per_job[i];
		CHECK(batch <= Rational(64) / (param(t, "x1") + Rational(1)));
	}
	SUBCASE("batches nest when the light machine keeps taking the first job") {
		CallbackResponder online([](const Job& j, int) { return j.deadline == 1 && j.release == 0 ? 1 : 2; });
		const int max_c = 3;
		const Transcript t = adversary_general_profit(online, max_c, 4);
		CHECK(t.branch == "MaxC reached");
		const auto a = split_rationals(*t.parameter("a_seq"));
		const auto s = split_rationals(*t.parameter("s_seq"));
		const auto p = split_rationals(*t.parameter("p_seq"));
		REQUIRE(a.size() == static_cast<std::size_t>(max_c));
		CHECK(p[0] == 1);
		std::size_t pos = 2 * max_c;
		for (std::size_t l = 0; l < a.size(); ++l) {
			if (l > 0) CHECK(p[l] == p[l - 1] / a[l - 1]);
			const long count = a[l].num().get_si();
			for (long i = 0; i < count; ++i, ++pos) {
				const Job& j = t.instance.jobs[pos];
				CHECK(s[l] <= j.release);
				CHECK(j.deadline <= s[l] + p[l]);
			}
		}
		const Rational delta = param(t, "delta_FinC");
		CHECK(delta <= Rational(1, max_c));
		CHECK(Rational(1) / (delta + Rational(1, max_c)) <= t.ratio);
	}
	SUBCASE("job budget") {
		CallbackResponder online([](const Job& j, int) { return j.deadline == 1 && j.release == 0 ? 1 : 2; });
		CHECK_THROWS_AS(adversary_general_profit(online, 4, 64, 500), BudgetExceeded);
	}
	FixedResponder one(1);
	CHECK_THROWS_AS(adversary_general_profit(one, 0, 64), InputError);
}

TEST_CASE("transcript json") {
	GreedyResponder gr;
	const Transcript t = adversary_uniform_m2(gr, 1, 1);
	const Json j = transcript_to_json(t);
	CHECK(j.at("branch") == "sigma2");
	CHECK(Rational::parse(j.at("ratio").get<std::string>()) == t.ratio);
	CHECK(instance_from_json(j.at("instance")) == t.instance);
}

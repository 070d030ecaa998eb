#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "satsched/errors.hpp"
#include "satsched/json_io.hpp"
#include "satsched/model.hpp"

using namespace satsched;
using testutil::make_instance;

namespace {

Schedule all_on(std::size_t n, MachineIndex a) { return Schedule::in_arrival_order(std::vector<MachineIndex>(n, a)); }

// Union measure by sorting and sweeping, independent of IntervalSet.
Rational union_length(std::vector<Interval> ivs) {
	std::sort(ivs.begin(), ivs.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
	Rational total;
	std::optional<Interval> cur;
	for (const auto& iv : ivs) {
		if (cur && iv.lo <= cur->hi) {
			cur->hi = max(cur->hi, iv.hi);
		} else {
			if (cur) total += cur->length();
			cur = iv;
		}
	}
	if (cur) total += cur->length();
	return total;
}

Instance random_uniform(std::mt19937_64& rng, int n, int m, int grid) {
	Instance inst;
	inst.machines = m;
	for (int i = 0; i < n; ++i) {
		const long r = static_cast<long>(rng() % static_cast<unsigned>(4 * grid));
		const long len = 1 + static_cast<long>(rng() % static_cast<unsigned>(2 * grid));
		inst.jobs.push_back({i + 1, Rational(r, grid), Rational(r + len, grid), Rational(len, grid)});
	}
	return inst;
}

Schedule random_schedule(std::mt19937_64& rng, std::size_t n, int m) {
	std::vector<MachineIndex> a(n);
	for (auto& x : a) x = 1 + static_cast<MachineIndex>(rng() % static_cast<unsigned>(m));
	Schedule s = Schedule::in_arrival_order(a);
	std::shuffle(s.placement_order.begin(), s.placement_order.end(), rng);
	return s;
}

}  // namespace

TEST_CASE("rational parsing and rendering") {
	CHECK(Rational::parse("3/6") == Rational(1, 2));
	CHECK(Rational::parse("-1.25") == Rational(-5, 4));
	CHECK(Rational::parse("7").str() == "7");
	CHECK(Rational(6, -4).str() == "-3/2");
	CHECK(Rational(7, 2).ceil() == 4);
	CHECK(Rational(-7, 2).floor() == -4);
	CHECK_THROWS(Rational::parse("1/0"));
	CHECK_THROWS(Rational::parse("x"));
	CHECK_THROWS(Rational(1) / Rational(0));
	CHECK(to_decimal(Rational(1, 3)) == "0.333333333333333");
}

TEST_CASE("sqrt convergents stay within the relative tolerance") {
	for (unsigned n : {2u, 7u, 11u, 22u}) {
		const Rational q = sqrt_convergent(n);
		CHECK(std::abs(q.to_double() / std::sqrt(static_cast<double>(n)) - 1.0) < 1e-6);
		// Convergents of sqrt(n) satisfy the Pell-type identity p^2 - n q^2 = +-k with small k.
		const mpz_class p = q.num(), d = q.den();
		const mpz_class pell = p * p - n * d * d;
		CHECK(abs(pell) < 2 * static_cast<long>(n));
	}
}

TEST_CASE("interval sets merge touching pieces and measure exactly") {
	IntervalSet s;
	s.add({0, 1});
	s.add({1, 2});
	s.add({3, 4});
	REQUIRE(s.pieces().size() == 2);
	CHECK(s.measure() == 3);
	CHECK(s.measure_within({Rational(1, 2), Rational(7, 2)}) == Rational(2));
	CHECK(s.minus(IntervalSet({{Rational(1, 2), 3}})).measure() == Rational(3, 2));
	CHECK(s.intersected(IntervalSet({{Rational(3, 2), 5}})).measure() == Rational(3, 2));
	CHECK(s.covers({0, 2}));
	CHECK_FALSE(s.covers({1, 4}));
	CHECK(Interval{0, 1}.intersects({Rational(1, 2), 2}));
	CHECK_FALSE(Interval{0, 1}.intersects({1, 2}));
}

TEST_CASE("validate_instance") {
	SUBCASE("uniform profits are filled in") {
		RawInstance raw;
		raw.machines = 2;
		for (auto [r, d] : std::vector<std::pair<Rational, Rational>>{
		         {0, 1}, {Rational(19, 10), 2}, {1, 2}, {0, 2}})
			raw.jobs.push_back({static_cast<JobId>(raw.jobs.size() + 1), r, d, std::nullopt});
		const Instance inst = validate_instance(raw);
		CHECK(inst.jobs[0].profit == 1);
		CHECK(inst.jobs[1].profit == Rational(1, 10));
		CHECK(inst.jobs[2].profit == 1);
		CHECK(inst.jobs[3].profit == 2);
	}
	SUBCASE("single explicit job") {
		RawInstance raw{1, {{1, 0, 1, Rational(1)}}, ProfitMode::explicit_profit};
		CHECK(validate_instance(raw).size() == 1);
	}
	SUBCASE("rejections") {
		CHECK_THROWS_AS(validate_instance({2, {{1, 1, 1, std::nullopt}}, ProfitMode::uniform}), InputError);
		CHECK_THROWS_AS(validate_instance({0, {{1, 0, 1, std::nullopt}}, ProfitMode::uniform}), InputError);
		CHECK_THROWS_AS(validate_instance({1, {{1, 0, 1, Rational(2)}}, ProfitMode::uniform}), InputError);
		CHECK_THROWS_AS(validate_instance({1, {{1, 0, 1, std::nullopt}, {1, 2, 3, std::nullopt}}, ProfitMode::uniform}),
		                InputError);
		CHECK_THROWS_AS(validate_instance({1, {{1, 0, 1, std::nullopt}}, ProfitMode::explicit_profit}), InputError);
	}
}

TEST_CASE("instance json round trip") {
	const Instance inst = testutil::tight_instance(Rational(1, 10));
	CHECK(instance_from_json(instance_to_json(inst)) == inst);
	const Json doc = Json::parse(R"({"m":1,"jobs":[{"id":3,"r":"0.5","d":"3/2"}]})");
	const Instance parsed = instance_from_json(doc);
	CHECK(parsed.jobs[0].profit == 1);
	CHECK(parsed.profit_mode == ProfitMode::uniform);
	CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"m":1,"profit_mode":"odd","jobs":[]})")), InputError);
}

TEST_CASE("decompose the four-job machine") {
	const Instance inst = testutil::four_jobs(1, ProfitMode::uniform);
	const auto segs = decompose(inst, all_on(4, 1), 1);
	REQUIRE(segs.size() == 4);
	const std::vector<std::pair<Rational, Rational>> spans{{0, 1}, {1, 3}, {3, 4}, {4, 5}};
	const std::vector<int> mult{1, 2, 2, 3};
	for (std::size_t i = 0; i < 4; ++i) {
		CHECK(segs[i].lo == spans[i].first);
		CHECK(segs[i].hi == spans[i].second);
		CHECK(segs[i].multiplicity == mult[i]);
		CHECK(segs[i].owner == std::optional<std::size_t>(0));
	}
	CHECK(segs[3].jobs == std::vector<std::size_t>{0, 2, 3});

	const Instance one = make_instance(1, {{0, 1}});
	const auto single = decompose(one, all_on(1, 1), 1);
	REQUIRE(single.size() == 1);
	CHECK(single[0].multiplicity == 1);
	CHECK(decompose(one, all_on(1, 1), 2).empty());
}

TEST_CASE("profit report on the four-job machine") {
	Instance inst = testutil::four_jobs(1, ProfitMode::explicit_profit);
	inst.jobs[0].profit = 5;
	const ProfitReport rep = profit_report(inst, all_on(4, 1));
	auto on_last = [&](std::size_t job) {
		for (const auto& s : rep.per_segment)
			if (s.job == job && s.lo == 4) return s.contribution;
		return Rational(-1);
	};
	CHECK(on_last(0) == inst.jobs[0].profit / Rational(15));
	CHECK(on_last(2) == inst.jobs[2].profit / Rational(6));
	CHECK(on_last(3) == inst.jobs[3].profit / Rational(3));
	CHECK(rep.per_job[0] == Rational(17, 6));

	// Midpoint integration of v/(d-r)/k(t) over 10^4 cells; segment ends sit on cell borders.
	const int cells = 10000;
	const double width = 5.0 / cells;
	double integral = 0;
	for (int i = 0; i < cells; ++i) {
		const double t = (i + 0.5) * width;
		int k = 0;
		for (const auto& j : inst.jobs)
			if (j.release.to_double() < t && t < j.deadline.to_double()) ++k;
		integral += 5.0 / 5.0 / k * width;
	}
	CHECK(integral == doctest::Approx(17.0 / 6.0).epsilon(1e-9));

	Rational sum;
	for (const auto& v : rep.per_job) sum += v;
	CHECK(rep.total == sum);

	const Instance one = make_instance(1, {{0, 3}});
	const ProfitReport alone = profit_report(one, all_on(1, 1));
	CHECK(alone.per_job[0] == 3);
	CHECK(alone.total == 3);
}

TEST_CASE("covered length") {
	const Instance inst = make_instance(1, {{0, 1}, {Rational(19, 10), 2}, {0, 2}, {0, 1}});
	Schedule s = Schedule::in_arrival_order({1, 1, 2, 2});
	CHECK(covered_length(inst, s, 1) == Rational(11, 10));
	Instance nested = make_instance(1, {{0, 2}, {0, 1}});
	CHECK(covered_length(nested, all_on(2, 1), 1) == 2);
	Instance two = make_instance(2, {{0, 2}});
	CHECK(covered_length(two, all_on(1, 1), 2) == 0);
	CHECK_THROWS_AS(covered_length(testutil::four_jobs(1, ProfitMode::explicit_profit), all_on(4, 1), 1), InputError);
}

TEST_CASE("schedule validation") {
	const Instance inst = make_instance(2, {{0, 1}, {1, 2}});
	CHECK_NOTHROW(check_schedule(inst, Schedule::in_arrival_order({1, 2})));
	CHECK_THROWS_AS(check_schedule(inst, Schedule::in_arrival_order({1, 3})), InputError);
	CHECK_THROWS_AS(check_schedule(inst, Schedule::in_arrival_order({1})), InputError);
	Schedule dup = Schedule::in_arrival_order({1, 1});
	dup.placement_order = {0, 0};
	CHECK_THROWS_AS(check_schedule(inst, dup), InputError);
}

TEST_CASE("property: uniform total equals summed union lengths") {
	std::mt19937_64 rng(11);
	for (int it = 0; it < 600; ++it) {
		const int m = 1 + static_cast<int>(rng() % 4);
		const Instance inst = random_uniform(rng, 1 + static_cast<int>(rng() % 8), m, 12);
		const Schedule s = random_schedule(rng, inst.size(), m);
		Rational expected;
		for (MachineIndex a = 1; a <= m; ++a) {
			std::vector<Interval> ivs;
			for (std::size_t i = 0; i < inst.size(); ++i)
				if (s.machine_of[i] == a) ivs.push_back(inst.jobs[i].interval());
			expected += union_length(ivs);
			CHECK(covered_length(inst, s, a) == union_length(ivs));
		}
		REQUIRE(profit_report(inst, s).total == expected);
	}
}

TEST_CASE("property: segments partition and count multiplicity") {
	std::mt19937_64 rng(12);
	for (int it = 0; it < 300; ++it) {
		const int m = 1 + static_cast<int>(rng() % 3);
		const Instance inst = random_uniform(rng, 1 + static_cast<int>(rng() % 7), m, 6);
		const Schedule s = random_schedule(rng, inst.size(), m);
		const auto rank = s.placement_rank();
		for (MachineIndex a = 1; a <= m; ++a) {
			const auto segs = decompose(inst, s, a);
			for (std::size_t k = 0; k < segs.size(); ++k) {
				const auto& seg = segs[k];
				REQUIRE(seg.lo < seg.hi);
				if (k > 0) CHECK(segs[k - 1].hi == seg.lo);
				const Time mid = (seg.lo + seg.hi) / Rational(2);
				int count = 0;
				std::optional<std::size_t> first;
				for (std::size_t i = 0; i < inst.size(); ++i) {
					const Job& j = inst.jobs[i];
					if (s.machine_of[i] != a) continue;
					if (j.release < mid && mid < j.deadline) {
						++count;
						if (!first || rank[i] < rank[*first]) first = i;
					}
					CHECK_FALSE((seg.lo < j.release && j.release < seg.hi));
					CHECK_FALSE((seg.lo < j.deadline && j.deadline < seg.hi));
				}
				CHECK(seg.multiplicity == count);
				CHECK(seg.owner == first);
			}
		}
		// Profit conservation: on each segment the k uniform shares sum to its length.
		const ProfitReport rep = profit_report(inst, s);
		for (MachineIndex a = 1; a <= m; ++a)
			for (const auto& seg : decompose(inst, s, a)) {
				if (seg.multiplicity == 0) continue;
				Rational sum;
				for (const auto& c : rep.per_segment)
					if (c.machine == a && c.lo == seg.lo && c.hi == seg.hi) sum += c.contribution;
				CHECK(sum == seg.hi - seg.lo);
			}
		CHECK(report_to_json(inst, rep) == report_to_json(inst, profit_report(inst, s)));
	}
}

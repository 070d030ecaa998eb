#include "satsched/model.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <unordered_set>

#include "satsched/errors.hpp"

namespace satsched {

std::size_t Instance::position(JobId id) const {
	for (std::size_t i = 0; i < jobs.size(); ++i)
		if (jobs[i].id == id) return i;
	throw InputError("unknown job id " + std::to_string(id));
}

Instance validate_instance(const RawInstance& raw) {
	if (raw.machines < 1) throw InputError("machine count must be at least 1, got " + std::to_string(raw.machines));
	Instance out;
	out.machines = raw.machines;
	out.profit_mode = raw.profit_mode;
	out.jobs.reserve(raw.jobs.size());
	std::unordered_set<JobId> seen;
	for (const auto& rj : raw.jobs) {
		const std::string tag = "job " + std::to_string(rj.id);
		if (!seen.insert(rj.id).second) throw InputError("duplicate job id " + std::to_string(rj.id));
		if (!(rj.release < rj.deadline))
			throw InputError(tag + ": release " + rj.release.str() + " must precede deadline " + rj.deadline.str());
		Job job{rj.id, rj.release, rj.deadline, {}};
		if (raw.profit_mode == ProfitMode::uniform) {
			job.profit = job.length();
			if (rj.profit && *rj.profit != job.profit)
				throw InputError(tag + ": uniform mode requires profit " + job.profit.str() + ", got " + rj.profit->str());
		} else {
			if (!rj.profit) throw InputError(tag + ": explicit mode requires a profit");
			if (rj.profit->sign() < 0) throw InputError(tag + ": profit must be non-negative");
			job.profit = *rj.profit;
		}
		out.jobs.push_back(std::move(job));
	}
	return out;
}

void check_instance(const Instance& instance) {
	RawInstance raw;
	raw.machines = instance.machines;
	raw.profit_mode = instance.profit_mode;
	for (const auto& j : instance.jobs) raw.jobs.push_back({j.id, j.release, j.deadline, j.profit});
	validate_instance(raw);
}

Schedule Schedule::in_arrival_order(std::vector<MachineIndex> machines) {
	Schedule s;
	s.placement_order.resize(machines.size());
	std::iota(s.placement_order.begin(), s.placement_order.end(), std::size_t{0});
	s.machine_of = std::move(machines);
	return s;
}

std::vector<std::size_t> Schedule::placement_rank() const {
	std::vector<std::size_t> rank(machine_of.size(), machine_of.size());
	for (std::size_t k = 0; k < placement_order.size(); ++k) rank[placement_order[k]] = k;
	return rank;
}

void check_schedule(const Instance& instance, const Schedule& schedule) {
	const std::size_t n = instance.size();
	if (schedule.machine_of.size() != n) throw InputError("schedule size does not match instance");
	for (MachineIndex a : schedule.machine_of)
		if (a < 1 || a > instance.machines) throw InputError("machine index " + std::to_string(a) + " out of range");
	std::vector<bool> seen(n, false);
	if (schedule.placement_order.size() != n) throw InputError("placement order must list every job once");
	for (std::size_t pos : schedule.placement_order) {
		if (pos >= n || seen[pos]) throw InputError("placement order must list every job once");
		seen[pos] = true;
	}
}

std::vector<PSegment> decompose(const Instance& instance, const Schedule& schedule, MachineIndex machine) {
	std::vector<std::size_t> on_machine;
	for (std::size_t i = 0; i < instance.size(); ++i)
		if (schedule.placed(i) && schedule.machine_of[i] == machine) on_machine.push_back(i);
	if (on_machine.empty()) return {};

	std::vector<Time> points;
	points.reserve(2 * on_machine.size());
	for (std::size_t i : on_machine) {
		points.push_back(instance.jobs[i].release);
		points.push_back(instance.jobs[i].deadline);
	}
	std::sort(points.begin(), points.end());
	points.erase(std::unique(points.begin(), points.end()), points.end());

	// Starts and ends bucketed by breakpoint index for the sweep.
	std::vector<std::vector<std::size_t>> starts(points.size()), ends(points.size());
	auto index_of = [&](const Time& t) {
		return static_cast<std::size_t>(std::lower_bound(points.begin(), points.end(), t) - points.begin());
	};
	for (std::size_t i : on_machine) {
		starts[index_of(instance.jobs[i].release)].push_back(i);
		ends[index_of(instance.jobs[i].deadline)].push_back(i);
	}

	const auto rank = schedule.placement_rank();
	std::vector<PSegment> out;
	out.reserve(points.size() - 1);
	std::set<std::size_t> active;
	for (std::size_t p = 0; p + 1 < points.size(); ++p) {
		for (std::size_t i : ends[p]) active.erase(i);
		for (std::size_t i : starts[p]) active.insert(i);
		PSegment seg;
		seg.machine = machine;
		seg.lo = points[p];
		seg.hi = points[p + 1];
		seg.multiplicity = static_cast<int>(active.size());
		seg.jobs.assign(active.begin(), active.end());
		if (!active.empty())
			seg.owner = *std::min_element(active.begin(), active.end(),
			                              [&](std::size_t a, std::size_t b) { return rank[a] < rank[b]; });
		out.push_back(std::move(seg));
	}
	return out;
}

ProfitReport profit_report(const Instance& instance, const Schedule& schedule) {
	ProfitReport report;
	report.per_job.assign(instance.size(), Rational{});
	for (MachineIndex a = 1; a <= instance.machines; ++a) {
		for (const auto& seg : decompose(instance, schedule, a)) {
			if (seg.multiplicity == 0) continue;
			const Rational share = (seg.hi - seg.lo) / Rational(seg.multiplicity);
			for (std::size_t i : seg.jobs) {
				const Job& job = instance.jobs[i];
				Rational c = share * job.profit / job.length();
				report.per_job[i] += c;
				report.per_segment.push_back({i, a, seg.lo, seg.hi, std::move(c)});
			}
		}
	}
	for (const auto& v : report.per_job) report.total += v;
	return report;
}

std::vector<IntervalSet> machine_cover(const Instance& instance, const Schedule& schedule) {
	std::vector<IntervalSet> cover(static_cast<std::size_t>(instance.machines) + 1);
	for (std::size_t i = 0; i < instance.size(); ++i)
		if (schedule.placed(i)) cover[static_cast<std::size_t>(schedule.machine_of[i])].add(instance.jobs[i].interval());
	return cover;
}

Rational covered_length(const Instance& instance, const Schedule& schedule, MachineIndex machine) {
	if (instance.profit_mode != ProfitMode::uniform) throw InputError("covered_length requires uniform profit mode");
	IntervalSet cover;
	for (std::size_t i = 0; i < instance.size(); ++i)
		if (schedule.placed(i) && schedule.machine_of[i] == machine) cover.add(instance.jobs[i].interval());
	return cover.measure();
}

std::vector<IntervalSet> owned_sets(const Instance& instance, const Schedule& schedule) {
	std::vector<IntervalSet> owned(instance.size());
	std::vector<IntervalSet> cover(static_cast<std::size_t>(instance.machines) + 1);
	for (std::size_t pos : schedule.placement_order) {
		if (!schedule.placed(pos)) continue;
		auto& machine_cover = cover[static_cast<std::size_t>(schedule.machine_of[pos])];
		IntervalSet own;
		own.add(instance.jobs[pos].interval());
		owned[pos] = own.minus(machine_cover);
		machine_cover.add(instance.jobs[pos].interval());
	}
	return owned;
}

}  // namespace satsched

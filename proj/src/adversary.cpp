#include "satsched/adversary.hpp"

#include <algorithm>
#include <sstream>

#include "satsched/errors.hpp"

namespace satsched {

const std::string* Transcript::parameter(const std::string& key) const {
	for (const auto& [k, v] : parameters)
		if (k == key) return &v;
	return nullptr;
}

Json transcript_to_json(const Transcript& t) {
	Json params = Json::object();
	for (const auto& [k, v] : t.parameters) params[k] = v;
	return {{"construction", t.construction},
	        {"responder", t.responder},
	        {"instance", instance_to_json(t.instance)},
	        {"online", schedule_to_json(t.instance, t.online)},
	        {"online_total", t.online_total.str()},
	        {"reference_kind", t.reference_kind},
	        {"reference", schedule_to_json(t.instance, t.reference)},
	        {"reference_total", t.reference_total.str()},
	        {"ratio", t.ratio.str()},
	        {"ratio_decimal", to_decimal(t.ratio)},
	        {"branch", t.branch},
	        {"parameters", params},
	        {"notes", t.notes}};
}

Instance gen_gr_tight_m2(const Rational& epsilon) {
	if (epsilon <= Rational(0) || Rational(1) <= epsilon) throw InputError("epsilon must lie in (0, 1)");
	RawInstance raw;
	raw.machines = 2;
	raw.jobs = {{1, 0, 1, {}}, {2, Rational(2) - epsilon, 2, {}}, {3, 1, 2, {}}, {4, 0, 2, {}}};
	return validate_instance(raw);
}

namespace {

/// One play of the game: emits jobs, collects checked answers.
struct Session {
	Responder* who;
	Instance inst;
	std::vector<MachineIndex> answers;

	Session(Responder& r, int m, ProfitMode mode) : who(&r) {
		inst.machines = m;
		inst.profit_mode = mode;
	}

	MachineIndex give(const Time& r, const Time& d, const Rational& v) {
		Job job{static_cast<JobId>(inst.size() + 1), r, d, v};
		inst.jobs.push_back(job);
		const MachineIndex a = who->respond(job, inst.machines, inst.profit_mode);
		if (a < 1 || a > inst.machines)
			throw ProtocolError("responder placed job " + std::to_string(job.id) + " on machine " + std::to_string(a) +
			                    " (valid: 1.." + std::to_string(inst.machines) + ")");
		answers.push_back(a);
		return a;
	}

	MachineIndex give_uniform(const Time& r, const Time& d) { return give(r, d, d - r); }
};

void finalize(Transcript& t, const Session& s, Schedule reference, std::string kind) {
	t.instance = s.inst;
	check_instance(t.instance);
	t.online = Schedule::in_arrival_order(s.answers);
	t.online_total = profit_report(t.instance, t.online).total;
	t.reference = std::move(reference);
	t.reference_kind = std::move(kind);
	t.reference_total = profit_report(t.instance, t.reference).total;
	t.ratio = t.online_total.is_zero() ? Rational(0) : t.reference_total / t.online_total;
	t.responder = s.who->name();
}

void param(Transcript& t, std::string key, std::string value) { t.parameters.emplace_back(std::move(key), std::move(value)); }

template <class T>
std::string join(const std::vector<T>& xs) {
	std::ostringstream out;
	for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? "," : "") << xs[i];
	return out.str();
}

}  // namespace

Transcript adversary_uniform_m2(Responder& online, const Rational& x, const Rational& y, const SearchLimits& limits) {
	if (x <= Rational(0) || y <= Rational(0)) throw InputError("x and y must be positive");
	Session s(online, 2, ProfitMode::uniform);
	Transcript t;
	t.construction = "uniform-m2";
	param(t, "x", x.str());
	param(t, "y", y.str());

	const MachineIndex a1 = s.give_uniform(0, 1);
	const MachineIndex a2 = s.give_uniform(Rational(1) + x, Rational(2) + x);
	if (a1 != a2) {
		t.branch = "sigma1";
		s.give_uniform(0, Rational(2) + x);
		param(t, "claimed_opt", (Rational(4) + x).str());
	} else {
		t.branch = "sigma2";
		s.give_uniform(Rational(1) - y, Rational(1) + x);
		s.give_uniform(1, Rational(1) + x + y);
		if (x == y) param(t, "claimed_opt", (Rational(2) + Rational(4) * x).str());
		if (Rational(1) < y)
			t.notes.push_back("y > 1: the online accounting for this branch assumes y <= 1");
	}
	const OptResult opt = brute_force_opt(s.inst, limits);
	finalize(t, s, opt.schedule, "OPT");
	online.finish(transcript_to_json(t));
	return t;
}

Rational uniform_general_bound_sigma1(int m, int a, const Rational& x) {
	const int mp = (m + 1) / 2, mpp = m / 2;
	return (Rational(2 * mp) + (Rational(2) + x) * Rational(mpp)) / (Rational(a + m) + (Rational(1) + x) * Rational(mpp));
}

Rational uniform_general_bound_sigma2(int m, int a, const Rational& x) {
	const int mp = (m + 1) / 2, mpp = m / 2;
	return (Rational(m) + Rational(4 * mpp) * x) / (Rational(2 * mp) + x * Rational(m - a) + Rational(2 * mpp) * x);
}

const std::vector<LowerBoundRow>& lower_bound_table() {
	static const std::vector<LowerBoundRow> rows = [] {
		const Rational r2 = sqrt_convergent(2), r7 = sqrt_convergent(7), r11 = sqrt_convergent(11),
		               r22 = sqrt_convergent(22);
		return std::vector<LowerBoundRow>{
		    {3, "7/6", 1.166, "0", "3", Rational(3)},
		    {4, "(22-2*sqrt2)/17", 1.127, "0", "2+2*sqrt2", Rational(2) + Rational(2) * r2},
		    {5, "(420-15*sqrt7)/333", 1.142, "1", "(-1+sqrt7)/2", (r7 - Rational(1)) / Rational(2)},
		    {6, "(51-6*sqrt2)/41", 1.140, "2", "sqrt2", r2},
		    {7, "(280-70*sqrt11)/227", 1.158, "1", "(1+sqrt11)/2", (Rational(1) + r11) / Rational(2)},
		    {8, "28/25", 1.12, "2", "2/3", Rational(2, 3)},
		    {9, "9/8", 1.125, "2", "1", Rational(1)},
		    {10, "(290-15*sqrt2)/239", 1.124, "3", "sqrt2", r2},
		    {11, "(704-11*sqrt22)/582", 1.120, "2", "(1+sqrt22)/3", (Rational(1) + r22) / Rational(3)},
		    {0, "(48-2*sqrt2)/41", 1.101, "m/4", "sqrt2", r2},
		};
	}();
	return rows;
}

Rational default_uniform_general_x(int m) {
	for (const auto& row : lower_bound_table())
		if (row.m == m) return row.x;
	return sqrt_convergent(2);
}

namespace {

struct GeneralCounts {
	int a = 0, b = 0, b_prime = 0, c = 0;
};

GeneralCounts count_split(const std::vector<MachineIndex>& answers, int m, int mp) {
	std::vector<bool> has1(static_cast<std::size_t>(m) + 1), has2(static_cast<std::size_t>(m) + 1);
	for (int j = 0; j < mp; ++j) has1[static_cast<std::size_t>(answers[static_cast<std::size_t>(j)])] = true;
	for (int j = mp; j < 2 * mp; ++j) has2[static_cast<std::size_t>(answers[static_cast<std::size_t>(j)])] = true;
	GeneralCounts k;
	for (int q = 1; q <= m; ++q) {
		const auto i = static_cast<std::size_t>(q);
		if (has1[i] && has2[i]) ++k.a;
		else if (has1[i]) ++k.b;
		else if (has2[i]) ++k.b_prime;
		else ++k.c;
	}
	return k;
}

Schedule general_reference_sigma1(int m, int mp, int mpp) {
	std::vector<MachineIndex> a;
	for (int j = 0; j < mp; ++j) a.push_back(j + 1);
	for (int j = 0; j < mp; ++j) a.push_back(j + 1);
	for (int j = 0; j < mpp; ++j) a.push_back(mp + j + 1);
	(void)m;
	return Schedule::in_arrival_order(a);
}

Schedule general_reference_sigma2(int m, int mp, int mpp) {
	std::vector<MachineIndex> a;
	for (int j = 0; j < mp; ++j) a.push_back(j < mpp ? j + 1 : m);        // S1
	for (int j = 0; j < mp; ++j) a.push_back(j < mpp ? mpp + j + 1 : m);  // S2
	for (int j = 0; j < mpp; ++j) a.push_back(mpp + j + 1);                // S'1
	for (int j = 0; j < mpp; ++j) a.push_back(j + 1);                      // S'2
	return Schedule::in_arrival_order(a);
}

Transcript play_general_branch(Session& s, bool sigma1, int m, const Rational& x, const GeneralCounts& k,
                               const SearchLimits& limits, int brute_force_max_m) {
	const int mp = (m + 1) / 2, mpp = m / 2;
	Transcript t;
	t.construction = "uniform-general";
	t.branch = sigma1 ? "sigma1" : "sigma2";
	param(t, "m", std::to_string(m));
	param(t, "x", x.str());
	param(t, "m_prime", std::to_string(mp));
	param(t, "m_double_prime", std::to_string(mpp));
	param(t, "a", std::to_string(k.a));
	param(t, "b", std::to_string(k.b));
	param(t, "b_prime", std::to_string(k.b_prime));
	param(t, "c", std::to_string(k.c));
	if (sigma1) {
		for (int j = 0; j < mpp; ++j) s.give_uniform(0, Rational(2) + x);
		param(t, "claimed_opt", (Rational(2 * mp) + (Rational(2) + x) * Rational(mpp)).str());
	} else {
		for (int j = 0; j < mpp; ++j) s.give_uniform(Rational(1) - x, Rational(1) + x);
		for (int j = 0; j < mpp; ++j) s.give_uniform(1, Rational(1) + Rational(2) * x);
		param(t, "claimed_opt", (Rational(m) + Rational(4 * mpp) * x).str());

		// Machine sets A, B, B', C from the first two groups, then the tilde counts.
		std::vector<int> kind(static_cast<std::size_t>(m) + 1, 3);  // 0=A 1=B 2=B' 3=C
		{
			std::vector<bool> h1(static_cast<std::size_t>(m) + 1), h2(static_cast<std::size_t>(m) + 1);
			for (int j = 0; j < mp; ++j) h1[static_cast<std::size_t>(s.answers[static_cast<std::size_t>(j)])] = true;
			for (int j = mp; j < 2 * mp; ++j) h2[static_cast<std::size_t>(s.answers[static_cast<std::size_t>(j)])] = true;
			for (int q = 1; q <= m; ++q) {
				const auto i = static_cast<std::size_t>(q);
				kind[i] = h1[i] && h2[i] ? 0 : h1[i] ? 1 : h2[i] ? 2 : 3;
			}
		}
		std::vector<int> n1(static_cast<std::size_t>(m) + 1), n2(static_cast<std::size_t>(m) + 1);
		for (int j = 0; j < mpp; ++j) {
			++n1[static_cast<std::size_t>(s.answers[static_cast<std::size_t>(2 * mp + j)])];
			++n2[static_cast<std::size_t>(s.answers[static_cast<std::size_t>(2 * mp + mpp + j)])];
		}
		int ta = 0, tb = 0, tc1 = 0, tc2 = 0;
		for (int q = 1; q <= m; ++q) {
			const auto i = static_cast<std::size_t>(q);
			const int any = n1[i] + n2[i];
			if (kind[i] == 0 && any > 0) ++ta;
			if ((kind[i] == 2 && n1[i] > 0) || (kind[i] == 1 && n2[i] > 0)) ++tb;
			if (kind[i] == 3 && any == 1) ++tc1;
			if (kind[i] == 3 && any >= 2) ++tc2;
		}
		param(t, "a_tilde", std::to_string(ta));
		param(t, "b_tilde", std::to_string(tb));
		param(t, "c_tilde_1", std::to_string(tc1));
		param(t, "c_tilde_2", std::to_string(tc2));
	}

	const Schedule explicit_ref = sigma1 ? general_reference_sigma1(m, mp, mpp) : general_reference_sigma2(m, mp, mpp);
	param(t, "explicit_offline_total", profit_report(s.inst, explicit_ref).total.str());
	if (m <= brute_force_max_m) {
		finalize(t, s, brute_force_opt(s.inst, limits).schedule, "OPT");
	} else {
		finalize(t, s, explicit_ref, "OFF");
	}
	param(t, "bound_sigma1", uniform_general_bound_sigma1(m, k.a, x).str());
	param(t, "bound_sigma2", uniform_general_bound_sigma2(m, k.a, x).str());
	return t;
}

}  // namespace

Transcript adversary_uniform_general(int m, Responder& online, const Rational& x, const SearchLimits& limits,
                                     int brute_force_max_m) {
	if (m < 3) throw InputError("the general construction needs m >= 3");
	if (x <= Rational(0)) throw InputError("x must be positive");
	const int mp = (m + 1) / 2;
	Session s(online, m, ProfitMode::uniform);
	for (int j = 0; j < mp; ++j) s.give_uniform(0, 1);
	for (int j = 0; j < mp; ++j) s.give_uniform(Rational(1) + x, Rational(2) + x);
	const GeneralCounts k = count_split(s.answers, m, mp);

	Transcript result;
	if (auto copy = online.clone()) {
		Session other = s;
		other.who = copy.get();
		Transcript t1 = play_general_branch(s, true, m, x, k, limits, brute_force_max_m);
		Transcript t2 = play_general_branch(other, false, m, x, k, limits, brute_force_max_m);
		const bool pick2 = t1.ratio < t2.ratio;
		result = pick2 ? std::move(t2) : std::move(t1);
		param(result, "selection", "replayed both branches");
		param(result, "other_branch_ratio", (pick2 ? t1 : t2).ratio.str());
		result.responder = online.name();
	} else {
		const bool sigma1 = uniform_general_bound_sigma2(m, k.a, x) <= uniform_general_bound_sigma1(m, k.a, x);
		result = play_general_branch(s, sigma1, m, x, k, limits, brute_force_max_m);
		param(result, "selection", "bound rule on observed a");
	}
	online.finish(transcript_to_json(result));
	return result;
}

Transcript adversary_general_profit(Responder& online, int max_c, long a1, std::size_t max_jobs) {
	if (max_c < 1 || a1 < 1) throw InputError("MaxC and a1 must be at least 1");
	Session s(online, 2, ProfitMode::explicit_profit);
	const Rational one(1);
	for (int i = 0; i < 2 * max_c; ++i) s.give(0, 1, one);
	const auto on1 = static_cast<int>(std::count(s.answers.begin(), s.answers.end(), 1));
	const int on2 = 2 * max_c - on1;
	const MachineIndex heavy = on1 >= on2 ? 1 : 2;
	const MachineIndex light = 3 - heavy;
	const int x1 = std::max(on1, on2), x2 = std::min(on1, on2);

	std::vector<long> a_seq{a1};
	std::vector<Rational> s_seq{Rational(0)}, p_seq{Rational(1)}, terms;
	std::vector<std::size_t> batch_start;
	int fin_c = 0;
	std::string label;
	for (int ell = 1;; ++ell) {
		if (ell == max_c + 1) {
			fin_c = ell;
			label = "MaxC reached";
			break;
		}
		const long a = a_seq.back();
		const Rational sl = s_seq.back(), pl = p_seq.back();
		if (s.inst.size() + static_cast<std::size_t>(a) > max_jobs)
			throw BudgetExceeded("general-profit construction would exceed " + std::to_string(max_jobs) + " jobs");
		batch_start.push_back(s.inst.size());
		std::optional<long> first_light;
		for (long i = 0; i < a; ++i) {
			const MachineIndex got = s.give(sl + pl * Rational(i) / Rational(a), sl + pl * Rational(i + 1) / Rational(a), one);
			if (got == light && !first_light) first_light = i;
		}
		terms.push_back(max(Rational(1, x1 + 1), Rational(1, x2 + ell)) * Rational(a));
		if (!first_light) {
			fin_c = ell;
			label = "light machine unused";
			break;
		}
		Rational sum(2);
		for (const auto& q : terms) sum += q;
		const mpz_class next = (Rational(max_c) * sum).ceil();
		if (next > static_cast<unsigned long>(max_jobs))
			throw BudgetExceeded("next batch size " + next.get_str() + " exceeds the job budget");
		s_seq.push_back(sl + pl * Rational(*first_light) / Rational(a));
		p_seq.push_back(pl / Rational(a));
		a_seq.push_back(next.get_si());
	}

	const int last = std::min(fin_c, max_c);
	Rational delta(2);
	for (int j = 1; j < last; ++j) delta += terms[static_cast<std::size_t>(j - 1)];
	delta /= Rational(a_seq[static_cast<std::size_t>(last - 1)]);

	std::vector<MachineIndex> off(s.inst.size(), 1);
	const std::size_t lo = batch_start[static_cast<std::size_t>(last - 1)];
	for (std::size_t i = lo; i < lo + static_cast<std::size_t>(a_seq[static_cast<std::size_t>(last - 1)]); ++i) off[i] = 2;

	Transcript t;
	t.construction = "general-profit";
	t.branch = label;
	param(t, "MaxC", std::to_string(max_c));
	param(t, "a1", std::to_string(a1));
	param(t, "heavy_machine", std::to_string(heavy));
	param(t, "x1", std::to_string(x1));
	param(t, "x2", std::to_string(x2));
	// Only batches actually emitted are listed.
	a_seq.resize(batch_start.size());
	s_seq.resize(batch_start.size());
	p_seq.resize(batch_start.size());
	param(t, "a_seq", join(a_seq));
	param(t, "s_seq", join(s_seq));
	param(t, "p_seq", join(p_seq));
	param(t, "FinC", std::to_string(fin_c));
	param(t, "delta_FinC", delta.str());
	param(t, "proof_bound", (one / (delta + Rational(1, max_c))).str());
	finalize(t, s, Schedule::in_arrival_order(off), "OFF");
	online.finish(transcript_to_json(t));
	return t;
}

}  // namespace satsched

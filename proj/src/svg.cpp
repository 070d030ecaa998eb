#include "satsched/svg.hpp"

#include <algorithm>
#include <sstream>

namespace satsched {

namespace {

const char* fill_of(SegmentClass cls) {
	switch (cls) {
		case SegmentClass::C: return "#3b6fd8";
		case SegmentClass::GE: return "#3aa655";
		case SegmentClass::OE: return "#d83b3b";
		case SegmentClass::N: return "#e8c93a";
	}
	return "#cccccc";
}

std::string esc(const std::string& s) {
	std::string out;
	for (char ch : s) {
		switch (ch) {
			case '&': out += "&amp;"; break;
			case '<': out += "&lt;"; break;
			case '>': out += "&gt;"; break;
			case '"': out += "&quot;"; break;
			default: out += ch;
		}
	}
	return out;
}

}  // namespace

std::string emit_schedule_svg(const Instance& inst, const std::vector<std::pair<std::string, Schedule>>& schedules,
                              const Classification* classes) {
	constexpr double left = 60, width = 720, row_h = 14, lane_gap = 10, title_h = 22, axis_h = 28;

	std::vector<Time> ticks;
	for (const auto& j : inst.jobs) {
		ticks.push_back(j.release);
		ticks.push_back(j.deadline);
	}
	std::sort(ticks.begin(), ticks.end());
	ticks.erase(std::unique(ticks.begin(), ticks.end()), ticks.end());
	const Time lo = ticks.empty() ? Time(0) : ticks.front();
	const Time hi = ticks.empty() ? Time(1) : ticks.back();
	const double span = std::max(1e-12, (hi - lo).to_double());
	auto px = [&](const Time& t) { return left + (t - lo).to_double() / span * width; };

	std::ostringstream body;
	double y = 10;
	for (const auto& [title, sched] : schedules) {
		body << "<g class=\"schedule\" data-title=\"" << esc(title) << "\">\n";
		body << "<text x=\"" << left << "\" y=\"" << y + 14 << "\" font-size=\"13\">" << esc(title) << "</text>\n";
		y += title_h;
		for (MachineIndex a = 1; a <= inst.machines; ++a) {
			// Stack jobs into rows so overlapping ones do not hide each other.
			std::vector<Time> row_end;
			std::vector<std::pair<std::size_t, std::size_t>> placed;  // (job, row)
			for (std::size_t pos : sched.placement_order) {
				if (sched.machine_of[pos] != a) continue;
				const Job& j = inst.jobs[pos];
				std::size_t r = 0;
				while (r < row_end.size() && j.release < row_end[r]) ++r;
				if (r == row_end.size()) row_end.push_back(j.deadline);
				else row_end[r] = j.deadline;
				placed.emplace_back(pos, r);
			}
			const double lane_h = std::max<std::size_t>(1, row_end.size()) * row_h;
			body << "<g class=\"lane\" data-machine=\"" << a << "\">\n";
			body << "<rect x=\"" << left << "\" y=\"" << y << "\" width=\"" << width << "\" height=\"" << lane_h
			     << "\" fill=\"#f4f4f4\"/>\n";
			body << "<text x=\"8\" y=\"" << y + row_h - 3 << "\" font-size=\"11\">M" << a << "</text>\n";
			for (const auto& [pos, r] : placed) {
				const Job& j = inst.jobs[pos];
				const double top = y + static_cast<double>(r) * row_h + 1;
				if (classes) {
					for (const auto& seg : classes->segments) {
						if (seg.job != pos) continue;
						body << "<rect class=\"seg seg-" << to_string(seg.cls) << "\" x=\"" << px(seg.span.lo) << "\" y=\""
						     << top << "\" width=\"" << px(seg.span.hi) - px(seg.span.lo) << "\" height=\"" << row_h - 2
						     << "\" fill=\"" << fill_of(seg.cls) << "\"/>\n";
					}
				}
				body << "<rect class=\"job\" data-id=\"" << j.id << "\" x=\"" << px(j.release) << "\" y=\"" << top
				     << "\" width=\"" << px(j.deadline) - px(j.release) << "\" height=\"" << row_h - 2 << "\" fill=\""
				     << (classes ? "none" : "#9db7e8") << "\" stroke=\"#222\"/>\n";
				body << "<text x=\"" << px(j.release) + 2 << "\" y=\"" << top + row_h - 4
				     << "\" font-size=\"9\">J" << j.id << "</text>\n";
			}
			body << "</g>\n";
			y += lane_h + lane_gap;
		}
		body << "</g>\n";
	}

	body << "<g class=\"axis\">\n";
	for (const auto& t : ticks) {
		body << "<line class=\"tick\" data-t=\"" << t << "\" x1=\"" << px(t) << "\" x2=\"" << px(t) << "\" y1=\"10\" y2=\""
		     << y << "\" stroke=\"#999\" stroke-dasharray=\"2,3\"/>\n";
		body << "<text x=\"" << px(t) << "\" y=\"" << y + 14 << "\" font-size=\"10\" text-anchor=\"middle\">" << t
		     << "</text>\n";
	}
	body << "</g>\n";
	y += axis_h;

	if (classes) {
		body << "<g class=\"legend\">\n";
		double x = left;
		for (SegmentClass cls : {SegmentClass::C, SegmentClass::GE, SegmentClass::OE, SegmentClass::N}) {
			body << "<rect class=\"key key-" << to_string(cls) << "\" x=\"" << x << "\" y=\"" << y << "\" width=\"12\" height=\"12\" fill=\""
			     << fill_of(cls) << "\"/>\n";
			body << "<text x=\"" << x + 16 << "\" y=\"" << y + 10 << "\" font-size=\"11\">" << to_string(cls) << "</text>\n";
			x += 60;
		}
		body << "</g>\n";
		y += 20;
	}

	std::ostringstream out;
	out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << left + width + 20 << "\" height=\"" << y
	    << "\" font-family=\"sans-serif\">\n"
	    << body.str() << "</svg>\n";
	return out.str();
}

}  // namespace satsched

#include "satsched/protocol.hpp"

#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "satsched/errors.hpp"

namespace satsched {

MachineIndex GreedyResponder::respond(const Job& job, int machines, ProfitMode mode) {
	if (!state_) state_.emplace(machines, mode);
	return state_->place(job);
}

void LineChannel::write_line(const std::string& line) {
	std::string data = line + "\n";
	std::size_t done = 0;
	while (done < data.size()) {
		const ssize_t w = ::write(out_, data.data() + done, data.size() - done);
		if (w < 0) {
			if (errno == EINTR) continue;
			throw ProtocolError(std::string("write failed: ") + std::strerror(errno));
		}
		done += static_cast<std::size_t>(w);
	}
}

std::optional<std::string> LineChannel::read_line() {
	for (;;) {
		const auto nl = buffer_.find('\n');
		if (nl != std::string::npos) {
			std::string line = buffer_.substr(0, nl);
			buffer_.erase(0, nl + 1);
			if (!line.empty() && line.back() == '\r') line.pop_back();
			return line;
		}
		char chunk[4096];
		const ssize_t r = ::read(in_, chunk, sizeof chunk);
		if (r < 0) {
			if (errno == EINTR) continue;
			throw ProtocolError(std::string("read failed: ") + std::strerror(errno));
		}
		if (r == 0) {
			if (buffer_.empty()) return std::nullopt;
			std::string line = std::move(buffer_);
			buffer_.clear();
			return line;
		}
		buffer_.append(chunk, static_cast<std::size_t>(r));
	}
}

Json job_message(const Job& job, int machines) {
	return {{"type", "job"},
	        {"id", job.id},
	        {"r", job.release.str()},
	        {"d", job.deadline.str()},
	        {"v", job.profit.str()},
	        {"m", machines}};
}

Json place_message(JobId id, MachineIndex machine) { return {{"type", "place"}, {"id", id}, {"machine", machine}}; }

ChannelResponder::ChannelResponder(int in_fd, int out_fd, std::string label)
    : channel_(in_fd, out_fd), label_(std::move(label)) {}

MachineIndex ChannelResponder::respond(const Job& job, int machines, ProfitMode mode) {
	Json msg = job_message(job, machines);
	msg["profit_mode"] = to_string(mode);
	channel_.write_line(msg.dump());
	for (;;) {
		const auto line = channel_.read_line();
		if (!line) throw ProtocolError("algorithm closed the connection before placing job " + std::to_string(job.id));
		if (line->empty()) continue;
		Json reply;
		try {
			reply = Json::parse(*line);
		} catch (const Json::parse_error& e) {
			throw ProtocolError("malformed reply: " + *line);
		}
		if (reply.value("type", "") != "place" || !reply.contains("machine") || !reply["machine"].is_number_integer())
			throw ProtocolError("expected a place message, got: " + *line);
		if (reply.contains("id") && reply["id"] != job.id)
			throw ProtocolError("place message for job " + reply["id"].dump() + " while job " + std::to_string(job.id) +
			                    " is pending");
		return reply["machine"].get<MachineIndex>();
	}
}

void ChannelResponder::finish(const Json& report) {
	Json msg = report;
	msg["type"] = "report";
	channel_.write_line(msg.dump());
}

namespace {

int connect_to(const std::string& host, int port) {
	addrinfo hints{};
	hints.ai_family = AF_UNSPEC;
	hints.ai_socktype = SOCK_STREAM;
	addrinfo* res = nullptr;
	const int rc = ::getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &res);
	if (rc != 0) throw ProtocolError("cannot resolve " + host + ": " + gai_strerror(rc));
	int fd = -1;
	for (addrinfo* p = res; p; p = p->ai_next) {
		fd = ::socket(p->ai_family, p->ai_socktype, p->ai_protocol);
		if (fd < 0) continue;
		if (::connect(fd, p->ai_addr, p->ai_addrlen) == 0) break;
		::close(fd);
		fd = -1;
	}
	::freeaddrinfo(res);
	if (fd < 0) throw ProtocolError("cannot connect to " + host + ":" + std::to_string(port));
	return fd;
}

}  // namespace

TcpResponder::TcpResponder(const std::string& host, int port)
    : ChannelResponder(-1, -1, "tcp:" + host + ":" + std::to_string(port)), fd_(connect_to(host, port)) {
	channel_ = LineChannel(fd_, fd_);
}

TcpResponder::~TcpResponder() {
	if (fd_ >= 0) ::close(fd_);
}

std::unique_ptr<Responder> connect_tcp(const std::string& address) {
	std::string rest = address.rfind("tcp:", 0) == 0 ? address.substr(4) : address;
	std::string host = "127.0.0.1";
	const auto colon = rest.rfind(':');
	if (colon != std::string::npos) {
		host = rest.substr(0, colon);
		rest = rest.substr(colon + 1);
	}
	int port = 0;
	try {
		port = std::stoi(rest);
	} catch (const std::exception&) {
		throw InputError("bad tcp address: " + address);
	}
	if (port <= 0 || port > 65535) throw InputError("bad tcp port: " + address);
	return std::make_unique<TcpResponder>(host, port);
}

std::optional<Json> answer_jobs(int in_fd, int out_fd, Responder& algo) {
	LineChannel channel(in_fd, out_fd);
	while (auto line = channel.read_line()) {
		if (line->empty()) continue;
		Json msg;
		try {
			msg = Json::parse(*line);
		} catch (const Json::parse_error&) {
			throw ProtocolError("malformed message: " + *line);
		}
		const std::string type = msg.value("type", "");
		if (type == "report") return msg;
		if (type != "job") throw ProtocolError("unexpected message type: " + type);
		Job job;
		job.id = msg.at("id").get<JobId>();
		job.release = rational_from_json(msg.at("r"));
		job.deadline = rational_from_json(msg.at("d"));
		job.profit = msg.contains("v") ? rational_from_json(msg["v"]) : job.deadline - job.release;
		const ProfitMode mode =
		    msg.value("profit_mode", "uniform") == "explicit" ? ProfitMode::explicit_profit : ProfitMode::uniform;
		const MachineIndex a = algo.respond(job, msg.at("m").get<int>(), mode);
		channel.write_line(place_message(job.id, a).dump());
	}
	return std::nullopt;
}

std::optional<Json> serve_tcp_once(int port, Responder& algo, const std::function<void(int)>& on_listen) {
	const int srv = ::socket(AF_INET, SOCK_STREAM, 0);
	if (srv < 0) throw ProtocolError("socket failed");
	const int yes = 1;
	::setsockopt(srv, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
	sockaddr_in addr{};
	addr.sin_family = AF_INET;
	addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
	addr.sin_port = htons(static_cast<uint16_t>(port));
	if (::bind(srv, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 || ::listen(srv, 1) != 0) {
		::close(srv);
		throw ProtocolError("cannot listen on port " + std::to_string(port));
	}
	socklen_t len = sizeof addr;
	::getsockname(srv, reinterpret_cast<sockaddr*>(&addr), &len);
	if (on_listen) on_listen(ntohs(addr.sin_port));
	const int fd = ::accept(srv, nullptr, nullptr);
	::close(srv);
	if (fd < 0) throw ProtocolError("accept failed");
	std::optional<Json> report;
	try {
		report = answer_jobs(fd, fd, algo);
	} catch (...) {
		::close(fd);
		throw;
	}
	::close(fd);
	return report;
}

}  // namespace satsched

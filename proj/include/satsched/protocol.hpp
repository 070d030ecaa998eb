#pragma once

// Job-placement game between an adversary and an online algorithm.
//
// Wire format is one JSON object per line:
//   adversary -> algorithm  {"type":"job","id":i,"r":"p/q","d":"p/q","v":"p/q","m":m}
//   algorithm -> adversary  {"type":"place","id":i,"machine":a}
//   adversary -> algorithm  {"type":"report", ...transcript...}   (last line)

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "satsched/greedy.hpp"
#include "satsched/json_io.hpp"

namespace satsched {

/// An online algorithm: answers each job with a machine before seeing the next.
class Responder {
public:
	virtual ~Responder() = default;
	virtual MachineIndex respond(const Job& job, int machines, ProfitMode mode) = 0;
	/// Called once when the session ends.
	virtual void finish(const Json& /*report*/) {}
	/// Independent copy in the current state, or nullptr if the responder cannot be
	/// duplicated (external processes).
	virtual std::unique_ptr<Responder> clone() const { return nullptr; }
	virtual std::string name() const = 0;
};

/// The greedy algorithm, in whichever profit mode the jobs arrive in.
class GreedyResponder final : public Responder {
public:
	MachineIndex respond(const Job& job, int machines, ProfitMode mode) override;
	std::unique_ptr<Responder> clone() const override { return std::make_unique<GreedyResponder>(*this); }
	std::string name() const override { return "gr"; }

private:
	std::optional<GreedyState> state_;
};

/// Always answers the same machine.
class FixedResponder final : public Responder {
public:
	explicit FixedResponder(MachineIndex machine) : machine_(machine) {}
	MachineIndex respond(const Job&, int, ProfitMode) override { return machine_; }
	std::unique_ptr<Responder> clone() const override { return std::make_unique<FixedResponder>(*this); }
	std::string name() const override { return "fixed-" + std::to_string(machine_); }

private:
	MachineIndex machine_;
};

/// Wraps a function; not cloneable since the function may carry hidden state.
class CallbackResponder final : public Responder {
public:
	using Fn = std::function<MachineIndex(const Job&, int machines)>;
	explicit CallbackResponder(Fn fn, std::string label = "callback") : fn_(std::move(fn)), label_(std::move(label)) {}
	MachineIndex respond(const Job& job, int machines, ProfitMode) override { return fn_(job, machines); }
	std::string name() const override { return label_; }

private:
	Fn fn_;
	std::string label_;
};

/// Line-oriented reader/writer over a pair of POSIX file descriptors.
class LineChannel {
public:
	LineChannel(int in_fd, int out_fd) : in_(in_fd), out_(out_fd) {}
	void write_line(const std::string& line);
	/// Next line without its terminator, or nullopt at end of stream.
	std::optional<std::string> read_line();

private:
	int in_;
	int out_;
	std::string buffer_;
};

/// Remote algorithm speaking the wire protocol over file descriptors.
class ChannelResponder : public Responder {
public:
	ChannelResponder(int in_fd, int out_fd, std::string label);
	MachineIndex respond(const Job& job, int machines, ProfitMode mode) override;
	void finish(const Json& report) override;
	std::string name() const override { return label_; }

protected:
	LineChannel channel_;
	std::string label_;
};

/// Client end of a TCP connection to an algorithm listening at host:port.
class TcpResponder final : public ChannelResponder {
public:
	TcpResponder(const std::string& host, int port);
	~TcpResponder() override;
	TcpResponder(const TcpResponder&) = delete;
	TcpResponder& operator=(const TcpResponder&) = delete;

private:
	int fd_;
};

/// Parses "tcp:host:port" (or "tcp:port" for localhost).
std::unique_ptr<Responder> connect_tcp(const std::string& address);

Json job_message(const Job& job, int machines);
Json place_message(JobId id, MachineIndex machine);

/// Algorithm side of the game: answers job lines with `algo` until a report line
/// (returned) or end of stream (nullopt).
std::optional<Json> answer_jobs(int in_fd, int out_fd, Responder& algo);

/// Accepts a single connection on `port` (0 picks a free port; `on_listen` gets the
/// bound port) and runs answer_jobs on it.
std::optional<Json> serve_tcp_once(int port, Responder& algo, const std::function<void(int)>& on_listen = {});

}  // namespace satsched

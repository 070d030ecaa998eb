#include <doctest.h>

#include <unistd.h>

#include <future>
#include <thread>

#include "helpers.hpp"
#include "satsched/adversary.hpp"
#include "satsched/errors.hpp"
#include "satsched/protocol.hpp"

using namespace satsched;

namespace {

struct Pipes {
	int to_algo[2];
	int to_adv[2];
	Pipes() {
		REQUIRE(pipe(to_algo) == 0);
		REQUIRE(pipe(to_adv) == 0);
	}
	~Pipes() {
		for (int fd : {to_algo[0], to_algo[1], to_adv[0], to_adv[1]})
			if (fd >= 0) close(fd);
	}
	void close_fd(int& fd) {
		close(fd);
		fd = -1;
	}
};

}  // namespace

TEST_CASE("message shapes") {
	const Json j = job_message({4, Rational(1, 2), 2, Rational(3, 2)}, 3);
	CHECK(j.dump() == R"({"type":"job","id":4,"r":"1/2","d":"2","v":"3/2","m":3})");
	CHECK(place_message(4, 2).dump() == R"({"type":"place","id":4,"machine":2})");
}

TEST_CASE("line channel splits on newlines") {
	Pipes p;
	LineChannel writer(-1, p.to_algo[1]);
	writer.write_line("first");
	writer.write_line("second");
	p.close_fd(p.to_algo[1]);
	LineChannel reader(p.to_algo[0], -1);
	CHECK(reader.read_line() == std::optional<std::string>("first"));
	CHECK(reader.read_line() == std::optional<std::string>("second"));
	CHECK_FALSE(reader.read_line().has_value());
}

TEST_CASE("adversary over pipes matches the in-process game") {
	Pipes p;
	auto algo = std::async(std::launch::async, [&] {
		GreedyResponder gr;
		return answer_jobs(p.to_algo[0], p.to_adv[1], gr);
	});
	ChannelResponder remote(p.to_adv[0], p.to_algo[1], "pipe");
	const Transcript wire = adversary_uniform_m2(remote, 1, 1);
	const std::optional<Json> report = algo.get();
	GreedyResponder local;
	const Transcript direct = adversary_uniform_m2(local, 1, 1);
	CHECK(wire.online == direct.online);
	CHECK(wire.ratio == direct.ratio);
	CHECK(wire.responder == "pipe");
	REQUIRE(report.has_value());
	CHECK(report->at("type") == "report");
	CHECK(report->at("ratio") == direct.ratio.str());
}

TEST_CASE("remote responders are not cloned; the bound rule picks the branch") {
	Pipes p;
	auto algo = std::async(std::launch::async, [&] {
		GreedyResponder gr;
		return answer_jobs(p.to_algo[0], p.to_adv[1], gr);
	});
	ChannelResponder remote(p.to_adv[0], p.to_algo[1], "pipe");
	const Transcript t = adversary_uniform_general(3, remote, Rational(3));
	CHECK(algo.get().has_value());
	CHECK(*t.parameter("selection") == "bound rule on observed a");
}

TEST_CASE("general-profit jobs carry their profit over the wire") {
	Pipes p;
	auto algo = std::async(std::launch::async, [&] {
		GreedyResponder gr;
		return answer_jobs(p.to_algo[0], p.to_adv[1], gr);
	});
	ChannelResponder remote(p.to_adv[0], p.to_algo[1], "pipe");
	const Transcript wire = adversary_general_profit(remote, 2, 8);
	CHECK(algo.get().has_value());
	GreedyResponder local;
	CHECK(wire.online == adversary_general_profit(local, 2, 8).online);
}

TEST_CASE("malformed and invalid answers") {
	SUBCASE("machine out of range") {
		Pipes p;
		auto algo = std::async(std::launch::async, [&] {
			FixedResponder bad(5);
			try {
				return answer_jobs(p.to_algo[0], p.to_adv[1], bad);
			} catch (const ProtocolError&) {
				return std::optional<Json>();
			}
		});
		{
			ChannelResponder remote(p.to_adv[0], p.to_algo[1], "pipe");
			CHECK_THROWS_AS(adversary_uniform_m2(remote, 1, 1), ProtocolError);
			p.close_fd(p.to_algo[1]);
		}
		algo.get();
	}
	SUBCASE("garbage line") {
		Pipes p;
		LineChannel fake(-1, p.to_adv[1]);
		fake.write_line("not json");
		ChannelResponder remote(p.to_adv[0], p.to_algo[1], "pipe");
		CHECK_THROWS_AS(remote.respond({1, 0, 1, 1}, 2, ProfitMode::uniform), ProtocolError);
	}
	SUBCASE("wrong job id") {
		Pipes p;
		LineChannel fake(-1, p.to_adv[1]);
		fake.write_line(place_message(7, 1).dump());
		ChannelResponder remote(p.to_adv[0], p.to_algo[1], "pipe");
		CHECK_THROWS_AS(remote.respond({1, 0, 1, 1}, 2, ProfitMode::uniform), ProtocolError);
	}
	SUBCASE("closed stream") {
		Pipes p;
		p.close_fd(p.to_adv[1]);
		ChannelResponder remote(p.to_adv[0], p.to_algo[1], "pipe");
		CHECK_THROWS_AS(remote.respond({1, 0, 1, 1}, 2, ProfitMode::uniform), ProtocolError);
	}
}

TEST_CASE("tcp session") {
	std::promise<int> port;
	auto bound = port.get_future();
	auto server = std::async(std::launch::async, [&] {
		GreedyResponder gr;
		return serve_tcp_once(0, gr, [&](int p) { port.set_value(p); });
	});
	const int p = bound.get();
	Transcript t;
	{
		auto remote = connect_tcp("tcp:127.0.0.1:" + std::to_string(p));
		t = adversary_uniform_m2(*remote, 1, 1);
	}
	const std::optional<Json> report = server.get();
	REQUIRE(report.has_value());
	CHECK(report->at("branch") == "sigma2");
	GreedyResponder local;
	CHECK(t.online == adversary_uniform_m2(local, 1, 1).online);
	CHECK_THROWS_AS(connect_tcp("tcp:"), InputError);
}

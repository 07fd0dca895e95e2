#include "polar/agents/backend.hpp"

#include "polar/core/errors.hpp"

#ifdef POLAR_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include <doctest.h>

#include <nlohmann/json.hpp>

#include <atomic>
#include <cstdlib>
#include <thread>

using namespace polar;
using namespace polar::agents;
using nlohmann::json;

namespace {

std::string chat_body(const std::string& content) {
    json reply;
    reply["choices"] = json::array({json{{"message", json{{"role", "assistant"},
                                                          {"content", content}}}}});
    return reply.dump();
}

// stub chat-completions server on an ephemeral localhost port
class StubServer {
public:
    using Responder = std::function<void(const httplib::Request&, httplib::Response&)>;

    explicit StubServer(Responder responder) {
        server_.Post("/v1/chat/completions",
                     [this, responder](const httplib::Request& req, httplib::Response& res) {
                         ++hits_;
                         responder(req, res);
                     });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~StubServer() {
        server_.stop();
        thread_.join();
    }

    std::string endpoint() const {
        return "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions";
    }
    int hits() const { return hits_; }

private:
    httplib::Server server_;
    int port_ = 0;
    std::thread thread_;
    std::atomic<int> hits_{0};
};

RemoteSettings settings_for(const StubServer& server) {
    RemoteSettings settings;
    settings.endpoint = server.endpoint();
    settings.credential_env = "POLAR_TEST_CREDENTIAL";
    settings.requests_per_minute = 0; // no throttling inside tests
    settings.backoff_initial_ms = 1;
    return settings;
}

AgentConfig remote_agent(int max_retries = 3) {
    AgentConfig cfg;
    cfg.role = AgentRole::SentimentExpert;
    cfg.backend = BackendKind::RemoteChat;
    cfg.model_name = "test-model";
    cfg.max_retries = max_retries;
    cfg.timeout_seconds = 5;
    return cfg;
}

struct CredentialGuard {
    CredentialGuard() { setenv("POLAR_TEST_CREDENTIAL", "sk-test", 1); }
    ~CredentialGuard() { unsetenv("POLAR_TEST_CREDENTIAL"); }
};

} // namespace

TEST_CASE("remote backend posts the chat-completions schema and returns the reply") {
    CredentialGuard credential;
    std::string seen_body, seen_auth;
    StubServer server([&](const httplib::Request& req, httplib::Response& res) {
        seen_body = req.body;
        seen_auth = req.get_header_value("Authorization");
        res.set_content(chat_body("the reply"), "application/json");
    });

    RemoteBackend backend(settings_for(server));
    const auto reply = backend.complete({{"system", "be terse"}, {"user", "hello"}},
                                        remote_agent());
    CHECK(reply == "the reply");
    CHECK(seen_auth == "Bearer sk-test");

    const auto body = json::parse(seen_body);
    CHECK(body.at("model") == "test-model");
    CHECK(body.at("temperature") == 0.0);
    REQUIRE(body.at("messages").size() == 2);
    CHECK(body.at("messages")[0].at("role") == "system");
    CHECK(body.at("messages")[1].at("content") == "hello");
    CHECK(server.hits() == 1);
    CHECK(backend.total_retries() == 0);
}

TEST_CASE("a 429 is retried and the retry is recorded") {
    CredentialGuard credential;
    std::atomic<int> request_no{0};
    StubServer server([&](const httplib::Request&, httplib::Response& res) {
        if (++request_no == 1) {
            res.status = 429;
            res.set_content("slow down", "text/plain");
        } else {
            res.set_content(chat_body("after backoff"), "application/json");
        }
    });

    RemoteBackend backend(settings_for(server));
    CHECK(backend.complete({{"user", "x"}}, remote_agent()) == "after backoff");
    CHECK(server.hits() == 2);
    CHECK(backend.total_retries() == 1);
}

TEST_CASE("persistent 500 exhausts max_retries attempts") {
    CredentialGuard credential;
    StubServer server([](const httplib::Request&, httplib::Response& res) {
        res.status = 500;
        res.set_content("boom", "text/plain");
    });

    RemoteBackend backend(settings_for(server));
    CHECK_THROWS_AS(backend.complete({{"user", "x"}}, remote_agent(3)), TransportError);
    CHECK(server.hits() == 3); // one per attempt
}

TEST_CASE("auth failures are not retried") {
    CredentialGuard credential;
    StubServer server([](const httplib::Request&, httplib::Response& res) {
        res.status = 401;
        res.set_content("nope", "text/plain");
    });
    RemoteBackend backend(settings_for(server));
    CHECK_THROWS_AS(backend.complete({{"user", "x"}}, remote_agent(5)), TransportError);
    CHECK(server.hits() == 1);
}

TEST_CASE("a malformed 200 body is a transport error") {
    CredentialGuard credential;
    StubServer server([](const httplib::Request&, httplib::Response& res) {
        res.set_content("this is not json", "text/plain");
    });
    RemoteBackend backend(settings_for(server));
    CHECK_THROWS_AS(backend.complete({{"user", "x"}}, remote_agent()), TransportError);
}

TEST_CASE("missing credential fails before any request") {
    unsetenv("POLAR_TEST_CREDENTIAL");
    StubServer server([](const httplib::Request&, httplib::Response& res) {
        res.set_content(chat_body("unused"), "application/json");
    });
    RemoteBackend backend(settings_for(server));
    CHECK_THROWS_WITH_AS(backend.complete({{"user", "x"}}, remote_agent()),
                         doctest::Contains("POLAR_TEST_CREDENTIAL"), TransportError);
    CHECK(server.hits() == 0);
}

TEST_CASE("rate limiter wait math") {
    CHECK(RateLimiter::wait_ms(-1, 1000, 60) == 0);       // first request
    CHECK(RateLimiter::wait_ms(1000, 1001, 0) == 0);      // disabled
    CHECK(RateLimiter::wait_ms(1000, 1100, 60) == 900);   // 1s interval at 60 rpm
    CHECK(RateLimiter::wait_ms(1000, 2500, 60) == 0);     // interval already passed
    CHECK(RateLimiter::wait_ms(1000, 1100, 120) == 400);  // 0.5s interval at 120 rpm
}

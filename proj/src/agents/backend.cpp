#include "polar/agents/backend.hpp"

#include "polar/core/errors.hpp"

#include <nlohmann/json.hpp>

// TLS support rides on OpenSSL when CMake found it.
#ifdef POLAR_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include <chrono>
#include <cstdlib>
#include <thread>

using nlohmann::json;

namespace polar::agents {

const char* role_name(AgentRole role) {
    switch (role) {
        case AgentRole::DomainSpecialist: return "DomainSpecialist";
        case AgentRole::SubgroupExplorer: return "SubgroupExplorer";
        case AgentRole::SocialMediaVeteran: return "SocialMediaVeteran";
        case AgentRole::LinguisticExpert: return "LinguisticExpert";
        case AgentRole::SentimentExpert: return "SentimentExpert";
        case AgentRole::PolarizationAssessor: return "PolarizationAssessor";
    }
    return "?";
}

const char* stance_name(StanceLabel s) {
    switch (s) {
        case StanceLabel::Favor: return "Favor";
        case StanceLabel::Against: return "Against";
        case StanceLabel::None: return "None";
    }
    return "?";
}

namespace {

std::int64_t now_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

} // namespace

void RateLimiter::configure(int requests_per_minute) {
    std::lock_guard lock(mu_);
    rpm_ = requests_per_minute;
}

std::int64_t RateLimiter::wait_ms(std::int64_t last_start_ms, std::int64_t now, int rpm) {
    if (rpm <= 0 || last_start_ms < 0) return 0;
    const std::int64_t interval = 60000 / rpm;
    const std::int64_t next_allowed = last_start_ms + interval;
    return next_allowed > now ? next_allowed - now : 0;
}

void RateLimiter::acquire() {
    std::unique_lock lock(mu_);
    const std::int64_t wait = wait_ms(last_start_ms_, now_ms(), rpm_);
    if (wait > 0) std::this_thread::sleep_for(std::chrono::milliseconds(wait));
    last_start_ms_ = now_ms();
}

RateLimiter& RateLimiter::global() {
    static RateLimiter limiter;
    return limiter;
}

RemoteBackend::RemoteBackend(RemoteSettings settings) : settings_(std::move(settings)) {
    RateLimiter::global().configure(settings_.requests_per_minute);
}

namespace {

struct ParsedUrl {
    std::string scheme_host_port; // httplib client target, e.g. "http://localhost:8080"
    std::string path;
};

ParsedUrl split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw TransportError("endpoint URL '" + url + "' has no scheme");
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

} // namespace

std::string RemoteBackend::complete(const std::vector<ChatMessage>& messages,
                                    const AgentConfig& config) {
    const char* credential = std::getenv(settings_.credential_env.c_str());
    if (!credential || std::string(credential).empty())
        throw TransportError("credential environment variable '" + settings_.credential_env +
                             "' is not set");

    json body;
    body["model"] = config.model_name;
    body["temperature"] = config.temperature;
    json msgs = json::array();
    for (const auto& m : messages) msgs.push_back({{"role", m.role}, {"content", m.content}});
    body["messages"] = msgs;
    const std::string payload = body.dump();

    const auto url = split_url(settings_.endpoint);
#ifndef POLAR_HAVE_OPENSSL
    if (url.scheme_host_port.rfind("https", 0) == 0)
        throw TransportError("built without TLS support; https endpoints unavailable");
#endif
    httplib::Client client(url.scheme_host_port);
    client.set_connection_timeout(config.timeout_seconds, 0);
    client.set_read_timeout(config.timeout_seconds, 0);
    client.set_write_timeout(config.timeout_seconds, 0);

    httplib::Headers headers{{"Authorization", std::string("Bearer ") + credential}};

    const int attempts = std::max(1, config.max_retries);
    std::string last_error;
    bool last_was_timeout = false;
    for (int attempt = 1; attempt <= attempts; ++attempt) {
        if (attempt > 1) {
            {
                std::lock_guard lock(mu_);
                ++total_retries_;
            }
            const auto backoff =
                std::chrono::milliseconds(settings_.backoff_initial_ms << (attempt - 2));
            std::this_thread::sleep_for(backoff);
        }
        RateLimiter::global().acquire();

        auto res = client.Post(url.path, headers, payload, "application/json");
        if (!res) {
            last_was_timeout = res.error() == httplib::Error::ConnectionTimeout ||
                               res.error() == httplib::Error::Read ||
                               res.error() == httplib::Error::Write;
            last_error = "transport failure: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status == 200) {
            try {
                json reply = json::parse(res->body);
                return reply.at("choices").at(0).at("message").at("content").get<std::string>();
            } catch (const std::exception& e) {
                throw TransportError(std::string("malformed chat-completions response: ") +
                                     e.what());
            }
        }
        if (res->status == 401 || res->status == 403)
            throw TransportError("authentication rejected (HTTP " + std::to_string(res->status) +
                                 ")");
        if (res->status == 429 || res->status >= 500) {
            last_was_timeout = false;
            last_error = "HTTP " + std::to_string(res->status);
            continue;
        }
        throw TransportError("HTTP " + std::to_string(res->status) + ": " + res->body);
    }
    if (last_was_timeout)
        throw TimeoutError("request timed out after " + std::to_string(attempts) + " attempts");
    throw TransportError("request failed after " + std::to_string(attempts) +
                         " attempts; last error: " + last_error);
}

} // namespace polar::agents

#pragma once

#include "polar/agents/types.hpp"

#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace polar::agents {

struct ChatMessage {
    std::string role; // "system" | "user" | "assistant"
    std::string content;
};

// Transport abstraction every agent call goes through. Implementations must
// be safe to call from multiple worker threads.
class ChatBackend {
public:
    virtual ~ChatBackend() = default;
    virtual std::string complete(const std::vector<ChatMessage>& messages,
                                 const AgentConfig& config) = 0;
};

// Process-global requests-per-minute throttle shared by all remote backends.
// acquire() blocks until the next request may start. rpm <= 0 disables it.
class RateLimiter {
public:
    void configure(int requests_per_minute);
    void acquire();

    // Milliseconds a request arriving at `now_ms` must wait given the last
    // request start. Pure; exercised directly by tests.
    static std::int64_t wait_ms(std::int64_t last_start_ms, std::int64_t now_ms, int rpm);

    static RateLimiter& global();

private:
    std::mutex mu_;
    int rpm_ = 0;
    std::int64_t last_start_ms_ = -1;
};

struct RemoteSettings {
    std::string endpoint = "https://api.openai.com/v1/chat/completions";
    std::string credential_env = "OPENAI_API_KEY";
    int requests_per_minute = 60;
    int backoff_initial_ms = 500;
};

// HTTP chat-completions client: POST {model, messages, temperature}, bearer
// credential from the configured environment variable. Retries transient
// failures (connect errors, 429, 5xx) with exponential backoff up to
// config.max_retries attempts, then throws TransportError (or TimeoutError
// when the final failure was a timeout).
class RemoteBackend : public ChatBackend {
public:
    explicit RemoteBackend(RemoteSettings settings);
    std::string complete(const std::vector<ChatMessage>& messages,
                         const AgentConfig& config) override;

    // retries performed since construction (attempts beyond the first per call)
    int total_retries() const { return total_retries_; }

private:
    RemoteSettings settings_;
    int total_retries_ = 0;
    std::mutex mu_;
};

} // namespace polar::agents

#pragma once

#include "polar/agents/backend.hpp"
#include "polar/agents/pipeline.hpp"
#include "polar/cli/toml.hpp"
#include "polar/coi/coi.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

namespace polar::cli {

// One run's full configuration: TOML file values overlaid with flag
// overrides. The semantic part (everything that can change analysis output:
// seed, thresholds, models, prompt contents—but not io paths or worker
// counts) is hashed, and that hash is embedded in every artifact so composed
// runs can reject mismatched inputs.
struct RunConfig {
    std::uint64_t seed = 42;
    int max_subgroups = 10;
    int uncertain_threshold = 20;
    double tau = 0.1;
    std::string window = "1h";
    int sample_size = 200;
    int workers = 1;
    double cohesion_default = 1.0;
    bool strict_ingest = false;
    bool determinism = true; // forces temperature 0.0 on every agent

    std::string prompts_dir = "prompts";
    std::string review_file = "review.jsonl";
    std::string checkpoint_file;

    std::string backend_kind = "mock"; // "mock" | "remote"
    agents::RemoteSettings remote;
    int max_retries = 3;
    int timeout_seconds = 30;
    std::map<agents::AgentRole, std::string> models;

    // Loads the TOML file (optional: empty path = defaults) without touching
    // the prompts directory yet.
    static RunConfig load(const std::string& config_path);

    // Prompts are loaded lazily so override flags can adjust prompts_dir
    // first; the config hash depends on their contents.
    agents::PipelineConfig pipeline_config() const;
    std::shared_ptr<agents::ChatBackend> make_backend() const;
    coi::CoiOptions coi_options() const;

    std::string config_hash() const; // 16 hex chars
};

// FNV-1a 64 over a byte string, hex-encoded. Stable across platforms.
std::string fnv1a_hex(const std::string& bytes);

} // namespace polar::cli

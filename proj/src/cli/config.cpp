#include "polar/cli/config.hpp"

#include "polar/agents/mock_backend.hpp"
#include "polar/core/errors.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>

using nlohmann::json;

namespace polar::cli {

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

const std::map<agents::AgentRole, std::string>& role_keys() {
    static const std::map<agents::AgentRole, std::string> keys = {
        {agents::AgentRole::DomainSpecialist, "domain_specialist"},
        {agents::AgentRole::SubgroupExplorer, "subgroup_explorer"},
        {agents::AgentRole::SocialMediaVeteran, "social_media_veteran"},
        {agents::AgentRole::LinguisticExpert, "linguistic_expert"},
        {agents::AgentRole::SentimentExpert, "sentiment_expert"},
        {agents::AgentRole::PolarizationAssessor, "polarization_assessor"},
    };
    return keys;
}

} // namespace

RunConfig RunConfig::load(const std::string& config_path) {
    RunConfig cfg;
    // §4.2-style defaults: the cheaper model everywhere, the stronger one for
    // the assessor. Pure configuration; any mapping may be set in the file.
    for (const auto& [role, key] : role_keys())
        cfg.models[role] =
            role == agents::AgentRole::PolarizationAssessor ? "gpt-4" : "gpt-3.5-turbo";
    if (config_path.empty()) return cfg;

    const TomlTable toml = TomlTable::parse_file(config_path);
    cfg.seed = static_cast<std::uint64_t>(toml.get_int("seed", static_cast<std::int64_t>(cfg.seed)));
    cfg.max_subgroups = static_cast<int>(toml.get_int("max_subgroups", cfg.max_subgroups));
    cfg.uncertain_threshold =
        static_cast<int>(toml.get_int("uncertain_threshold", cfg.uncertain_threshold));
    cfg.tau = toml.get_double("tau", cfg.tau);
    cfg.window = toml.get_string("window", cfg.window);
    cfg.sample_size = static_cast<int>(toml.get_int("sample_size", cfg.sample_size));
    cfg.workers = static_cast<int>(toml.get_int("workers", cfg.workers));
    cfg.cohesion_default = toml.get_double("cohesion_default", cfg.cohesion_default);
    cfg.strict_ingest = toml.get_bool("strict_ingest", cfg.strict_ingest);
    cfg.determinism = toml.get_bool("determinism", cfg.determinism);

    cfg.prompts_dir = toml.get_string("paths.prompts", cfg.prompts_dir);
    cfg.review_file = toml.get_string("paths.review_file", cfg.review_file);
    cfg.checkpoint_file = toml.get_string("paths.checkpoint", cfg.checkpoint_file);

    cfg.backend_kind = toml.get_string("backend.kind", cfg.backend_kind);
    if (cfg.backend_kind != "mock" && cfg.backend_kind != "remote")
        throw ConfigError("backend.kind must be 'mock' or 'remote'");
    cfg.remote.endpoint = toml.get_string("backend.endpoint", cfg.remote.endpoint);
    // credentials stay out of the file: only the variable NAME is configured
    cfg.remote.credential_env = toml.get_string("backend.credential_env", cfg.remote.credential_env);
    cfg.remote.requests_per_minute = static_cast<int>(
        toml.get_int("backend.requests_per_minute", cfg.remote.requests_per_minute));
    cfg.remote.backoff_initial_ms =
        static_cast<int>(toml.get_int("backend.backoff_initial_ms", cfg.remote.backoff_initial_ms));
    cfg.max_retries = static_cast<int>(toml.get_int("backend.max_retries", cfg.max_retries));
    cfg.timeout_seconds =
        static_cast<int>(toml.get_int("backend.timeout_seconds", cfg.timeout_seconds));

    for (const auto& [role, key] : role_keys())
        cfg.models[role] = toml.get_string("agents." + key + ".model", cfg.models[role]);

    if (cfg.max_subgroups < 1) throw ConfigError("max_subgroups must be >= 1");
    if (cfg.tau < 0.0 || cfg.tau >= 1.0) throw ConfigError("tau must satisfy 0 <= tau < 1");
    return cfg;
}

agents::PipelineConfig RunConfig::pipeline_config() const {
    agents::PipelineConfig pipeline;
    pipeline.seed = seed;
    pipeline.sample_size = sample_size;
    pipeline.uncertain_threshold = uncertain_threshold;
    pipeline.max_subgroups = max_subgroups;
    pipeline.workers = workers;
    pipeline.review_file = review_file;
    pipeline.checkpoint_file = checkpoint_file;
    pipeline.prompts = agents::PromptSet::load_dir(prompts_dir);
    pipeline.config_hash = config_hash();

    const auto backend =
        backend_kind == "remote" ? agents::BackendKind::RemoteChat : agents::BackendKind::Mock;
    for (const auto& [role, model] : models) {
        agents::AgentConfig agent;
        agent.role = role;
        agent.backend = backend;
        agent.model_name = model;
        agent.temperature = 0.0; // determinism mode pins it
        agent.max_retries = max_retries;
        agent.timeout_seconds = timeout_seconds;
        pipeline.agents[role] = agent;
    }
    return pipeline;
}

std::shared_ptr<agents::ChatBackend> RunConfig::make_backend() const {
    if (backend_kind == "remote") return std::make_shared<agents::RemoteBackend>(remote);
    return std::make_shared<agents::MockBackend>();
}

coi::CoiOptions RunConfig::coi_options() const {
    coi::CoiOptions opts;
    opts.cohesion_default = cohesion_default;
    return opts;
}

std::string RunConfig::config_hash() const {
    // canonical JSON of the semantic fields; io paths and worker counts are
    // excluded because they cannot change analysis output
    json doc;
    doc["seed"] = seed;
    doc["max_subgroups"] = max_subgroups;
    doc["uncertain_threshold"] = uncertain_threshold;
    doc["tau"] = tau;
    doc["window"] = window;
    doc["sample_size"] = sample_size;
    doc["cohesion_default"] = cohesion_default;
    doc["backend"] = backend_kind;
    json models_json = json::object();
    for (const auto& [role, model] : models) models_json[agents::role_name(role)] = model;
    doc["models"] = models_json;
    doc["prompts"] = fnv1a_hex(agents::PromptSet::load_dir(prompts_dir).fingerprint_text());
    return fnv1a_hex(doc.dump());
}

} // namespace polar::cli

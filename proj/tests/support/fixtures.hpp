#pragma once

#include "polar/agents/mock_backend.hpp"
#include "polar/agents/pipeline.hpp"
#include "polar/core/comments_io.hpp"

#include <string>
#include <vector>

namespace testsupport {

inline std::string source_dir() { return POLAR_SOURCE_DIR; }

inline std::string fixture_path(const std::string& name) {
    return source_dir() + "/data/fixtures/" + name;
}

inline std::vector<polar::core::Comment> load_fixture_comments() {
    return polar::core::read_comments_file(fixture_path("ru_ua_comments.jsonl"), true).comments;
}

inline polar::agents::PipelineConfig mock_pipeline_config(std::uint64_t seed = 42) {
    auto cfg = polar::agents::PipelineConfig::mock_defaults();
    cfg.seed = seed;
    cfg.prompts = polar::agents::PromptSet::load_dir(source_dir() + "/prompts");
    cfg.config_hash = "test000000000000";
    return cfg;
}

} // namespace testsupport

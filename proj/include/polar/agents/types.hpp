#pragma once

#include "polar/core/types.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace polar::agents {

enum class AgentRole {
    DomainSpecialist,
    SubgroupExplorer,
    SocialMediaVeteran,
    LinguisticExpert,
    SentimentExpert,
    PolarizationAssessor,
};

const char* role_name(AgentRole role);

enum class BackendKind { RemoteChat, Mock };

// Per-role agent configuration. Role-to-model mapping is configuration, not
// code: the defaults pair a cheaper model with the analysis stages and a
// stronger one with the assessor, but any mapping is valid.
struct AgentConfig {
    AgentRole role = AgentRole::DomainSpecialist;
    BackendKind backend = BackendKind::Mock;
    std::string model_name = "gpt-3.5-turbo";
    double temperature = 0.0; // must stay 0.0 in determinism mode
    int max_retries = 3;
    int timeout_seconds = 30;
};

// Output of the Background Mining Stage. `subgroups` stays empty until
// subgroup exploration fills it.
struct Background {
    std::string event_summary;
    std::string timeline;
    std::vector<std::string> stakeholders;
    std::vector<core::Subgroup> subgroups;
};

// Output of the Semantic Analysis Stage for one comment.
struct SemanticAnnotations {
    std::string platform_notes;   // slang/meme/hashtag readings
    std::string linguistic_notes; // grammar/rhetoric/tense readings
    double sentiment = 0.0;       // in [-1, +1]
    std::optional<int> sentiment_target; // subgroup index, or none
};

// One unclassifiable comment queued for a human expert. `resolution` is only
// ever set by human review (interactively or via an applied review file).
struct ReviewItem {
    std::string comment_id;
    std::string text;
    std::vector<int> candidate_subgroups;
    std::optional<int> resolution;
    std::string new_label; // set when the human introduced a new subgroup
};

enum class ReviewMode { Interactive, File };

struct ExplorationResult {
    std::vector<core::Subgroup> subgroups;
    std::vector<std::optional<int>> assignments; // aligned with the input comments
    std::vector<ReviewItem> review;
};

struct SkippedComment {
    std::string comment_id;
    std::string reason;
};

struct SkippedReport {
    std::vector<SkippedComment> items;
    std::size_t count() const { return items.size(); }
};

struct PipelineResult {
    Background background;
    std::vector<core::Triplet> triplets; // in input comment order
    SkippedReport skipped;               // |triplets| + |skipped| == |comments|
    std::vector<ReviewItem> review;      // unresolved items persisted for later review
};

enum class StanceLabel { Favor, Against, None };

const char* stance_name(StanceLabel s);

} // namespace polar::agents

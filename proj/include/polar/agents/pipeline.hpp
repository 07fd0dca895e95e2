#pragma once

#include "polar/agents/backend.hpp"
#include "polar/agents/prompts.hpp"
#include "polar/agents/review.hpp"
#include "polar/agents/types.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace polar::agents {

struct PipelineConfig {
    std::uint64_t seed = 42;
    int sample_size = 200;        // background mining reads at most this many comments
    int uncertain_threshold = 20; // queue length that triggers a review flush
    int max_subgroups = 10;
    int workers = 1;              // bounded parallelism for the per-comment loop
    ReviewMode review_mode = ReviewMode::File;
    std::string review_file = "review.jsonl";
    std::string checkpoint_file;  // empty disables checkpointing
    std::string config_hash;      // embedded in artifacts, review files and checkpoints
    PromptSet prompts;
    std::map<AgentRole, AgentConfig> agents;

    const AgentConfig& agent(AgentRole role) const;

    // Mock-backend configuration for all six roles; prompts must still be
    // loaded by the caller.
    static PipelineConfig mock_defaults();
};

// ---- Stage operations (Background Mining / Semantic Analysis / Assessment) ----

// Domain specialist pass: event background from (a seeded uniform sample of)
// the corpus. Deterministic under the mock backend and a fixed seed.
Background mine_background(const std::vector<core::Comment>& comments, int sample_size,
                           ChatBackend& backend, const PipelineConfig& cfg);

// Subgroup exploration: proposes the roster, then assigns each comment to a
// subgroup or queues it as a ReviewItem. Queue flushes go to `interactive`
// when given (review mode Interactive), otherwise to cfg.review_file.
ExplorationResult explore_subgroups(const std::vector<core::Comment>& comments,
                                    const Background& background, int uncertain_threshold,
                                    ChatBackend& backend, const PipelineConfig& cfg,
                                    ReviewHandler* interactive = nullptr);

// Social-media veteran pass: hashtags, slang, memes.
std::string analyze_platform(const core::Comment& comment, const Background& background,
                             ChatBackend& backend, const PipelineConfig& cfg);

// Linguistic expert pass: grammar, rhetoric, tense; backed by the event
// background.
std::string analyze_linguistics(const core::Comment& comment, const Background& background,
                                ChatBackend& backend, const PipelineConfig& cfg);

// Sentiment expert pass: fuses both note streams into a score in [-1, +1]
// and a sentiment target (or none).
SemanticAnnotations analyze_sentiment(const core::Comment& comment,
                                      const std::string& platform_notes,
                                      const std::string& linguistic_notes,
                                      const std::vector<core::Subgroup>& subgroups,
                                      ChatBackend& backend, const PipelineConfig& cfg);

struct Assessment {
    std::optional<core::Triplet> triplet; // empty when the comment is skipped
    std::string skip_reason;
};

// Polarization assessor pass: integrates the annotations into a triplet.
// Comments without a sentiment target are skipped (reported, not dropped
// silently); an unresolved author stance yields a null-stance triplet.
Assessment assess_polarization(const core::Comment& comment,
                               const SemanticAnnotations& annotations,
                               const Background& background,
                               std::optional<int> explorer_stance, ChatBackend& backend,
                               const PipelineConfig& cfg);

// ---- Whole-pipeline runs ----

// Runs all stages in order: background mining, subgroup exploration with the
// human-review fallback, then the per-comment semantic + assessment loop
// (bounded parallelism, results in input order). Guarantees
// |triplets| + |skipped| == |comments|. When cfg.checkpoint_file is set, a
// StageFailure inside the per-comment loop persists completed work there and
// a rerun resumes from it.
PipelineResult run_triplet_pipeline(const std::vector<core::Comment>& comments,
                                    const PipelineConfig& cfg, ChatBackend& backend,
                                    ReviewHandler* interactive = nullptr);

struct StanceOutcome {
    StanceLabel label = StanceLabel::None;
    double score = 0.0;
};

// Zero-shot stance detection: the subgroup explorer is dropped and the five
// remaining agents run against the predefined target; the assessor's score is
// mapped to Favor/Against/None with the tau dead zone (tau < 0 selects the
// binary sign mapping for datasets without a None class).
StanceOutcome detect_stance(const std::string& text, const std::string& target_name,
                            const PipelineConfig& cfg, ChatBackend& backend, double tau);

} // namespace polar::agents

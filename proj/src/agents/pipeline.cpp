#include "polar/agents/pipeline.hpp"

#include "polar/core/comments_io.hpp"
#include "polar/core/errors.hpp"
#include "polar/core/rng.hpp"
#include "polar/core/score.hpp"
#include "polar/core/time.hpp"
#include "polar/eval/metrics.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

using nlohmann::json;

namespace polar::agents {

const AgentConfig& PipelineConfig::agent(AgentRole role) const {
    const auto it = agents.find(role);
    if (it == agents.end())
        throw ConfigError(std::string("no agent configured for role ") + role_name(role));
    return it->second;
}

PipelineConfig PipelineConfig::mock_defaults() {
    PipelineConfig cfg;
    for (AgentRole role :
         {AgentRole::DomainSpecialist, AgentRole::SubgroupExplorer, AgentRole::SocialMediaVeteran,
          AgentRole::LinguisticExpert, AgentRole::SentimentExpert,
          AgentRole::PolarizationAssessor}) {
        AgentConfig a;
        a.role = role;
        a.backend = BackendKind::Mock;
        a.model_name = role == AgentRole::PolarizationAssessor ? "gpt-4" : "gpt-3.5-turbo";
        cfg.agents[role] = a;
    }
    return cfg;
}

namespace {

std::string render_comments_block(const std::vector<core::Comment>& comments) {
    std::ostringstream out;
    for (const auto& c : comments)
        out << "- " << core::format_rfc3339(c.timestamp) << " | " << c.text << "\n";
    return out.str();
}

std::string render_roster_block(const std::vector<core::Subgroup>& subgroups) {
    std::ostringstream out;
    for (const auto& g : subgroups)
        out << g.index << ": " << g.label << " -- " << g.description << "\n";
    return out.str();
}

std::string render_background_block(const Background& bg) {
    std::ostringstream out;
    out << bg.event_summary << "\n" << bg.timeline << "\n";
    if (!bg.stakeholders.empty()) {
        out << "Stakeholders:";
        for (const auto& s : bg.stakeholders) out << " " << s;
        out << "\n";
    }
    return out.str();
}

std::vector<ChatMessage> render_messages(const PipelineConfig& cfg, const std::string& name,
                                         const std::map<std::string, std::string>& vars) {
    return {{"user", render_template(cfg.prompts.get(name), vars)}};
}

// Pulls the first {...} object out of a reply, tolerating code fences and
// prose around it.
json parse_json_object(const std::string& reply) {
    const auto open = reply.find('{');
    const auto close = reply.rfind('}');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw FormatError("no JSON object in reply");
    return json::parse(reply.substr(open, close - open + 1));
}

// One agent call with the parse-repair protocol: an unparseable reply is
// retried once with a repair instruction, then the stage fails.
json call_agent_json(ChatBackend& backend, const PipelineConfig& cfg, AgentRole role,
                     const std::string& stage, std::vector<ChatMessage> messages) {
    const AgentConfig& agent = cfg.agent(role);
    std::string reply;
    try {
        reply = backend.complete(messages, agent);
    } catch (const Error& e) {
        throw StageFailure(stage, std::string(role_name(role)) + ": " + e.what());
    }
    try {
        return parse_json_object(reply);
    } catch (const std::exception&) {
        messages.push_back({"assistant", reply});
        messages.push_back({"user", "Your previous reply could not be parsed. Reply again with "
                                    "exactly one JSON object and nothing else."});
        std::string repaired;
        try {
            repaired = backend.complete(messages, agent);
        } catch (const Error& e) {
            throw StageFailure(stage, std::string(role_name(role)) + ": " + e.what());
        }
        try {
            return parse_json_object(repaired);
        } catch (const std::exception&) {
            throw StageFailure(stage, std::string(role_name(role)) +
                                          " returned an unparseable reply twice");
        }
    }
}

std::optional<int> roster_index_of(const std::vector<core::Subgroup>& roster,
                                   const std::string& label) {
    for (const auto& g : roster)
        if (g.label == label) return g.index;
    return std::nullopt;
}

// ---- checkpointing for the per-comment loop ----

json triplet_to_json(const core::Triplet& t) {
    json j;
    j["comment_id"] = t.comment_id;
    if (t.stance)
        j["stance"] = *t.stance;
    else
        j["stance"] = nullptr;
    j["score"] = t.score;
    j["target"] = t.target;
    j["likes"] = t.likes;
    return j;
}

core::Triplet triplet_from_json(const json& j) {
    core::Triplet t;
    t.comment_id = j.at("comment_id").get<std::string>();
    if (!j.at("stance").is_null()) t.stance = j.at("stance").get<int>();
    t.score = j.at("score").get<double>();
    t.target = j.at("target").get<int>();
    t.likes = j.at("likes").get<std::int64_t>();
    return t;
}

json background_to_json(const Background& bg) {
    json j;
    j["event_summary"] = bg.event_summary;
    j["timeline"] = bg.timeline;
    j["stakeholders"] = bg.stakeholders;
    json groups = json::array();
    for (const auto& g : bg.subgroups)
        groups.push_back({{"index", g.index}, {"label", g.label}, {"description", g.description}});
    j["subgroups"] = groups;
    return j;
}

Background background_from_json(const json& j) {
    Background bg;
    bg.event_summary = j.at("event_summary").get<std::string>();
    bg.timeline = j.value("timeline", "");
    bg.stakeholders = j.value("stakeholders", std::vector<std::string>{});
    for (const auto& g : j.value("subgroups", json::array())) {
        core::Subgroup sg;
        sg.index = g.at("index").get<int>();
        sg.label = g.at("label").get<std::string>();
        sg.description = g.value("description", "");
        bg.subgroups.push_back(std::move(sg));
    }
    return bg;
}

struct LoopCheckpoint {
    Background background;
    std::vector<core::Subgroup> subgroups;
    std::vector<std::optional<int>> assignments;
    std::map<std::size_t, Assessment> results;
};

void save_checkpoint(const std::string& path, const std::string& config_hash,
                     const LoopCheckpoint& cp) {
    json doc;
    doc["kind"] = "polar.checkpoint";
    doc["config_hash"] = config_hash;
    doc["background"] = background_to_json(cp.background);
    json groups = json::array();
    for (const auto& g : cp.subgroups)
        groups.push_back({{"index", g.index}, {"label", g.label}, {"description", g.description}});
    doc["subgroups"] = groups;
    json assigns = json::array();
    for (const auto& a : cp.assignments) assigns.push_back(a ? json(*a) : json(nullptr));
    doc["assignments"] = assigns;
    json results = json::object();
    for (const auto& [idx, assessment] : cp.results) {
        json entry;
        if (assessment.triplet)
            entry["triplet"] = triplet_to_json(*assessment.triplet);
        else
            entry["skip"] = assessment.skip_reason;
        results[std::to_string(idx)] = entry;
    }
    doc["results"] = results;

    std::ofstream out(path, std::ios::trunc);
    if (!out) throw CheckpointError("cannot write checkpoint '" + path + "'");
    out << doc.dump() << '\n';
}

std::optional<LoopCheckpoint> load_checkpoint(const std::string& path,
                                              const std::string& config_hash) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw CheckpointError("corrupt checkpoint '" + path + "': " + e.what());
    }
    if (doc.value("kind", "") != "polar.checkpoint")
        throw CheckpointError("'" + path + "' is not a checkpoint file");
    if (doc.value("config_hash", "") != config_hash)
        throw CheckpointError("checkpoint '" + path +
                              "' was produced by a different configuration; delete it or rerun "
                              "with the original config");

    LoopCheckpoint cp;
    cp.background = background_from_json(doc.at("background"));
    for (const auto& g : doc.at("subgroups")) {
        core::Subgroup sg;
        sg.index = g.at("index").get<int>();
        sg.label = g.at("label").get<std::string>();
        sg.description = g.value("description", "");
        cp.subgroups.push_back(std::move(sg));
    }
    for (const auto& a : doc.at("assignments"))
        cp.assignments.push_back(a.is_null() ? std::nullopt : std::optional<int>(a.get<int>()));
    for (const auto& [key, entry] : doc.at("results").items()) {
        Assessment assessment;
        if (entry.contains("triplet"))
            assessment.triplet = triplet_from_json(entry.at("triplet"));
        else
            assessment.skip_reason = entry.value("skip", "");
        cp.results[std::stoul(key)] = std::move(assessment);
    }
    return cp;
}

} // namespace

Background mine_background(const std::vector<core::Comment>& comments, int sample_size,
                           ChatBackend& backend, const PipelineConfig& cfg) {
    if (comments.empty()) throw EmptyCorpus("background mining needs at least one comment");
    if (sample_size < 1) throw ConfigError("sample_size must be >= 1");

    std::vector<core::Comment> sample;
    if (comments.size() > static_cast<std::size_t>(sample_size)) {
        core::SeededRng rng(core::derive_seed(cfg.seed, "background-sample"));
        for (auto pos : rng.sample_positions(comments.size(), static_cast<std::size_t>(sample_size)))
            sample.push_back(comments[pos]);
    } else {
        sample = comments;
    }

    const auto reply = call_agent_json(
        backend, cfg, AgentRole::DomainSpecialist, "BackgroundMining",
        render_messages(cfg, "domain_specialist", {{"comments", render_comments_block(sample)}}));

    Background bg;
    try {
        bg.event_summary = reply.at("event_summary").get<std::string>();
        bg.timeline = reply.value("timeline", "");
        bg.stakeholders = reply.value("stakeholders", std::vector<std::string>{});
    } catch (const std::exception& e) {
        throw StageFailure("BackgroundMining", std::string("bad reply shape: ") + e.what());
    }
    if (core::trim(bg.event_summary).empty())
        throw StageFailure("BackgroundMining", "empty event summary");
    return bg;
}

ExplorationResult explore_subgroups(const std::vector<core::Comment>& comments,
                                    const Background& background, int uncertain_threshold,
                                    ChatBackend& backend, const PipelineConfig& cfg,
                                    ReviewHandler* interactive) {
    if (uncertain_threshold < 1) throw ConfigError("uncertain_threshold must be >= 1");

    ExplorationResult result;

    // roster proposal over the whole corpus
    const auto roster_reply = call_agent_json(
        backend, cfg, AgentRole::SubgroupExplorer, "SubgroupExploration",
        render_messages(cfg, "subgroup_explorer_roster",
                        {{"background", render_background_block(background)},
                         {"comments", render_comments_block(comments)}}));
    try {
        for (const auto& g : roster_reply.at("subgroups")) {
            core::Subgroup sg;
            sg.index = static_cast<int>(result.subgroups.size());
            sg.label = g.at("label").get<std::string>();
            sg.description = g.value("description", "");
            result.subgroups.push_back(std::move(sg));
        }
    } catch (const json::exception& e) {
        throw StageFailure("SubgroupExploration", std::string("bad roster reply: ") + e.what());
    }
    if (static_cast<int>(result.subgroups.size()) > cfg.max_subgroups)
        throw SubgroupOverflow(
            std::to_string(result.subgroups.size()) + " subgroups proposed but max_subgroups is " +
            std::to_string(cfg.max_subgroups) +
            "; merge subgroups with similar speaking patterns or raise max_subgroups");

    result.assignments.assign(comments.size(), std::nullopt);

    std::vector<ReviewItem> queue;
    std::vector<std::size_t> queue_positions; // comment index per queued item
    const auto flush_queue = [&]() {
        if (queue.empty()) return;
        if (interactive) {
            interactive->resolve(queue, result.subgroups);
            for (std::size_t q = 0; q < queue.size(); ++q) {
                if (queue[q].resolution)
                    result.assignments[queue_positions[q]] = *queue[q].resolution;
                else
                    result.review.push_back(queue[q]);
            }
        } else {
            // batch mode: persist for offline review, stances stay unresolved
            for (auto& item : queue) result.review.push_back(std::move(item));
            write_review_file(cfg.review_file, result.review, result.subgroups, cfg.config_hash);
        }
        queue.clear();
        queue_positions.clear();
    };

    for (std::size_t i = 0; i < comments.size(); ++i) {
        const auto reply = call_agent_json(
            backend, cfg, AgentRole::SubgroupExplorer, "SubgroupExploration",
            render_messages(cfg, "subgroup_explorer_assign",
                            {{"background", render_background_block(background)},
                             {"subgroups", render_roster_block(result.subgroups)},
                             {"comment", comments[i].text}}));
        std::string assignment;
        try {
            assignment = reply.at("assignment").get<std::string>();
        } catch (const json::exception& e) {
            throw StageFailure("SubgroupExploration",
                               std::string("bad assignment reply: ") + e.what());
        }

        std::optional<int> idx;
        if (assignment != "uncertain") idx = roster_index_of(result.subgroups, assignment);
        if (idx) {
            result.assignments[i] = idx;
            continue;
        }
        ReviewItem item;
        item.comment_id = comments[i].id;
        item.text = comments[i].text;
        for (const auto& g : result.subgroups) item.candidate_subgroups.push_back(g.index);
        queue.push_back(std::move(item));
        queue_positions.push_back(i);
        if (queue.size() >= static_cast<std::size_t>(uncertain_threshold)) flush_queue();
    }
    flush_queue(); // leftovers below the threshold still reach the reviewer

    return result;
}

std::string analyze_platform(const core::Comment& comment, const Background& background,
                             ChatBackend& backend, const PipelineConfig& cfg) {
    const auto reply = call_agent_json(
        backend, cfg, AgentRole::SocialMediaVeteran, "SemanticAnalysis",
        render_messages(cfg, "social_media_veteran",
                        {{"background", render_background_block(background)},
                         {"comment", comment.text}}));
    const std::string notes = reply.value("notes", "");
    if (notes.empty()) throw StageFailure("SemanticAnalysis", "veteran returned empty notes");
    return notes;
}

std::string analyze_linguistics(const core::Comment& comment, const Background& background,
                                ChatBackend& backend, const PipelineConfig& cfg) {
    const auto reply = call_agent_json(
        backend, cfg, AgentRole::LinguisticExpert, "SemanticAnalysis",
        render_messages(cfg, "linguistic_expert",
                        {{"background", render_background_block(background)},
                         {"comment", comment.text}}));
    const std::string notes = reply.value("notes", "");
    if (notes.empty()) throw StageFailure("SemanticAnalysis", "linguist returned empty notes");
    return notes;
}

SemanticAnnotations analyze_sentiment(const core::Comment& comment,
                                      const std::string& platform_notes,
                                      const std::string& linguistic_notes,
                                      const std::vector<core::Subgroup>& subgroups,
                                      ChatBackend& backend, const PipelineConfig& cfg) {
    const auto reply = call_agent_json(
        backend, cfg, AgentRole::SentimentExpert, "SemanticAnalysis",
        render_messages(cfg, "sentiment_expert",
                        {{"subgroups", render_roster_block(subgroups)},
                         {"platform_notes", platform_notes},
                         {"linguistic_notes", linguistic_notes},
                         {"comment", comment.text}}));

    SemanticAnnotations ann;
    ann.platform_notes = platform_notes;
    ann.linguistic_notes = linguistic_notes;
    try {
        ann.sentiment = core::clamp_score(reply.at("sentiment").get<double>());
        if (!reply.at("target").is_null())
            ann.sentiment_target = roster_index_of(subgroups, reply.at("target").get<std::string>());
    } catch (const json::exception& e) {
        throw StageFailure("SemanticAnalysis", std::string("bad sentiment reply: ") + e.what());
    }
    return ann;
}

Assessment assess_polarization(const core::Comment& comment,
                               const SemanticAnnotations& annotations,
                               const Background& background,
                               std::optional<int> explorer_stance, ChatBackend& backend,
                               const PipelineConfig& cfg) {
    const auto& roster = background.subgroups;
    std::string target_label = "none";
    if (annotations.sentiment_target)
        target_label = roster[static_cast<std::size_t>(*annotations.sentiment_target)].label;
    std::string assignment_label = "unresolved";
    if (explorer_stance)
        assignment_label = roster[static_cast<std::size_t>(*explorer_stance)].label;

    char score_buf[32];
    std::snprintf(score_buf, sizeof score_buf, "%.6f", annotations.sentiment);

    const auto reply = call_agent_json(
        backend, cfg, AgentRole::PolarizationAssessor, "PolarizationAssessment",
        render_messages(cfg, "polarization_assessor",
                        {{"background", render_background_block(background)},
                         {"subgroups", render_roster_block(roster)},
                         {"comment", comment.text},
                         {"platform_notes", annotations.platform_notes},
                         {"linguistic_notes", annotations.linguistic_notes},
                         {"sentiment_score", score_buf},
                         {"sentiment_target", target_label},
                         {"author_assignment", assignment_label}}));

    Assessment out;
    try {
        std::optional<int> target;
        if (!reply.at("target").is_null())
            target = roster_index_of(roster, reply.at("target").get<std::string>());
        if (!target) {
            out.skip_reason = "no sentiment target"; // Csn construction has no null-target path
            return out;
        }
        core::Triplet t;
        t.comment_id = comment.id;
        t.likes = comment.likes;
        t.score = core::clamp_score(reply.at("score").get<double>());
        t.target = *target;
        if (!reply.at("stance").is_null())
            t.stance = roster_index_of(roster, reply.at("stance").get<std::string>());
        out.triplet = std::move(t);
    } catch (const json::exception& e) {
        throw StageFailure("PolarizationAssessment", std::string("bad reply: ") + e.what());
    }
    return out;
}

PipelineResult run_triplet_pipeline(const std::vector<core::Comment>& comments,
                                    const PipelineConfig& cfg, ChatBackend& backend,
                                    ReviewHandler* interactive) {
    if (comments.empty()) throw EmptyCorpus();

    LoopCheckpoint cp;
    bool resumed = false;
    if (!cfg.checkpoint_file.empty()) {
        if (auto loaded = load_checkpoint(cfg.checkpoint_file, cfg.config_hash)) {
            cp = std::move(*loaded);
            if (cp.assignments.size() != comments.size())
                throw CheckpointError("checkpoint does not match the input corpus size");
            resumed = true;
        }
    }

    std::vector<ReviewItem> review_items;
    if (!resumed) {
        cp.background = mine_background(comments, cfg.sample_size, backend, cfg);
        auto exploration = explore_subgroups(comments, cp.background, cfg.uncertain_threshold,
                                             backend, cfg, interactive);
        cp.subgroups = exploration.subgroups;
        cp.assignments = std::move(exploration.assignments);
        cp.background.subgroups = cp.subgroups;
        review_items = std::move(exploration.review);
        if (!cfg.checkpoint_file.empty()) save_checkpoint(cfg.checkpoint_file, cfg.config_hash, cp);
    }

    // per-comment semantic + assessment loop, bounded parallelism, input order
    Background background_for_loop = cp.background;
    background_for_loop.subgroups = cp.subgroups;

    std::mutex results_mu;
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;

    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < comments.size(); ++i)
        if (cp.results.find(i) == cp.results.end()) pending.push_back(i);

    const int workers = std::max(1, cfg.workers);
    const auto work = [&]() {
        while (!failed.load()) {
            const std::size_t slot = next.fetch_add(1);
            if (slot >= pending.size()) return;
            const std::size_t i = pending[slot];
            try {
                const auto platform = analyze_platform(comments[i], background_for_loop, backend, cfg);
                const auto linguistic =
                    analyze_linguistics(comments[i], background_for_loop, backend, cfg);
                const auto annotations = analyze_sentiment(comments[i], platform, linguistic,
                                                           cp.subgroups, backend, cfg);
                auto assessment = assess_polarization(comments[i], annotations, background_for_loop,
                                                      cp.assignments[i], backend, cfg);
                std::lock_guard lock(results_mu);
                cp.results[i] = std::move(assessment);
            } catch (...) {
                std::lock_guard lock(results_mu);
                if (!first_error) first_error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    if (first_error) {
        if (!cfg.checkpoint_file.empty()) save_checkpoint(cfg.checkpoint_file, cfg.config_hash, cp);
        std::rethrow_exception(first_error);
    }

    PipelineResult result;
    result.background = cp.background;
    result.background.subgroups = cp.subgroups;
    result.review = std::move(review_items);
    for (std::size_t i = 0; i < comments.size(); ++i) {
        auto& assessment = cp.results.at(i);
        if (assessment.triplet)
            result.triplets.push_back(*assessment.triplet);
        else
            result.skipped.items.push_back({comments[i].id, assessment.skip_reason});
    }
    if (result.triplets.size() + result.skipped.items.size() != comments.size())
        throw std::logic_error("triplet/skip conservation violated");

    if (!cfg.checkpoint_file.empty()) std::filesystem::remove(cfg.checkpoint_file);
    return result;
}

StanceOutcome detect_stance(const std::string& text, const std::string& target_name,
                            const PipelineConfig& cfg, ChatBackend& backend, double tau) {
    if (core::trim(text).empty()) throw FormatError("stance detection text is empty");
    if (core::trim(target_name).empty()) throw FormatError("stance detection target is empty");

    core::Comment comment;
    comment.id = "eval";
    comment.text = text;
    comment.author = "eval";
    comment.likes = 0;
    comment.topic = target_name;

    // eval mode: no subgroup exploration, the roster is the predefined target
    Background background = mine_background({comment}, std::max(1, cfg.sample_size), backend, cfg);
    background.subgroups = {{0, target_name, "predefined stance-detection target"}};

    const auto platform = analyze_platform(comment, background, backend, cfg);
    const auto linguistic = analyze_linguistics(comment, background, backend, cfg);
    const auto annotations =
        analyze_sentiment(comment, platform, linguistic, background.subgroups, backend, cfg);
    const auto assessment =
        assess_polarization(comment, annotations, background, std::nullopt, backend, cfg);

    StanceOutcome outcome;
    outcome.score = assessment.triplet ? assessment.triplet->score : annotations.sentiment;
    outcome.label = tau < 0.0 ? eval::map_score_to_stance_binary(outcome.score)
                              : eval::map_score_to_stance(outcome.score, tau);
    return outcome;
}

} // namespace polar::agents

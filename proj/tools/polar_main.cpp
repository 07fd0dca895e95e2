#include "polar/agents/artifacts_io.hpp"
#include "polar/agents/mock_backend.hpp"
#include "polar/agents/pipeline.hpp"
#include "polar/agents/review.hpp"
#include "polar/cli/config.hpp"
#include "polar/cli/dot.hpp"
#include "polar/coi/coi.hpp"
#include "polar/coi/series.hpp"
#include "polar/core/comments_io.hpp"
#include "polar/core/errors.hpp"
#include "polar/core/rng.hpp"
#include "polar/core/slicing.hpp"
#include "polar/csn/builder.hpp"
#include "polar/csn/serialize.hpp"
#include "polar/eval/runner.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using nlohmann::json;
using namespace polar;

namespace {

struct Overrides {
    std::optional<std::int64_t> seed;
    std::optional<double> tau;
    std::optional<std::string> window;
    std::optional<int> max_subgroups;
    std::optional<int> uncertain_threshold;
    std::optional<int> sample_size;
    std::optional<int> workers;
    std::optional<std::string> prompts_dir;
    std::optional<std::string> backend;
    std::optional<std::string> review_file;
    std::optional<std::string> checkpoint;
    bool strict = false;
};

void add_override_flags(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--seed", o.seed, "override the run seed");
    cmd->add_option("--tau", o.tau, "override the stance dead-zone threshold");
    cmd->add_option("--window", o.window, "override the time-slice window (e.g. 1h, 30m)");
    cmd->add_option("--max-subgroups", o.max_subgroups, "override the subgroup cap");
    cmd->add_option("--uncertain-threshold", o.uncertain_threshold,
                    "override the review queue flush threshold");
    cmd->add_option("--sample-size", o.sample_size, "override the background sample size");
    cmd->add_option("--workers", o.workers, "override the worker count");
    cmd->add_option("--prompts", o.prompts_dir, "override the prompt template directory");
    cmd->add_option("--backend", o.backend, "override the backend kind (mock|remote)");
    cmd->add_option("--review-file", o.review_file, "override the review file path");
    cmd->add_option("--checkpoint", o.checkpoint, "checkpoint file for resumable runs");
    cmd->add_flag("--strict", o.strict, "fail on the first malformed input line");
}

cli::RunConfig effective_config(const std::string& config_path, const Overrides& o) {
    auto cfg = cli::RunConfig::load(config_path);
    if (o.seed) cfg.seed = static_cast<std::uint64_t>(*o.seed);
    if (o.tau) cfg.tau = *o.tau;
    if (o.window) cfg.window = *o.window;
    if (o.max_subgroups) cfg.max_subgroups = *o.max_subgroups;
    if (o.uncertain_threshold) cfg.uncertain_threshold = *o.uncertain_threshold;
    if (o.sample_size) cfg.sample_size = *o.sample_size;
    if (o.workers) cfg.workers = *o.workers;
    if (o.prompts_dir) cfg.prompts_dir = *o.prompts_dir;
    if (o.backend) cfg.backend_kind = *o.backend;
    if (o.review_file) cfg.review_file = *o.review_file;
    if (o.checkpoint) cfg.checkpoint_file = *o.checkpoint;
    if (o.strict) cfg.strict_ingest = true;
    if (cfg.backend_kind != "mock" && cfg.backend_kind != "remote")
        throw ConfigError("backend must be 'mock' or 'remote'");
    if (cfg.tau < 0.0 || cfg.tau >= 1.0) throw ConfigError("tau must satisfy 0 <= tau < 1");
    return cfg;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    if (!out) throw FormatError("cannot open output file '" + path + "'");
    return out;
}

void check_artifact_hash(const std::string& artifact_hash, const std::string& config_hash,
                         const std::string& what, bool allow_mismatch) {
    if (allow_mismatch || artifact_hash.empty()) return;
    if (artifact_hash != config_hash)
        throw ConfigError(what + " was produced with config hash " + artifact_hash +
                          " but the current config hashes to " + config_hash +
                          "; rerun the earlier stage or pass --allow-hash-mismatch");
}

void report_ingest_issues(const core::IngestResult& ingest) {
    for (const auto& issue : ingest.issues)
        std::cerr << "warning: skipped line " << issue.line << ": " << issue.message << "\n";
}

agents::TripletsFile pipeline_to_triplets(const agents::PipelineResult& result,
                                          const cli::RunConfig& cfg) {
    agents::TripletsFile file;
    file.config_hash = cfg.config_hash();
    file.seed = cfg.seed;
    file.subgroups = result.background.subgroups;
    file.triplets = result.triplets;
    file.skipped = result.skipped.items;
    return file;
}

int cmd_analyze(const std::string& config_path, const Overrides& overrides,
                const std::string& input, const std::string& out_triplets,
                const std::string& out_background, bool interactive) {
    const auto cfg = effective_config(config_path, overrides);
    auto pipeline_cfg = cfg.pipeline_config();
    pipeline_cfg.review_mode = interactive ? agents::ReviewMode::Interactive
                                           : agents::ReviewMode::File;
    const auto backend = cfg.make_backend();

    const auto ingest = core::read_comments_file(input, cfg.strict_ingest);
    report_ingest_issues(ingest);

    std::optional<agents::InteractiveReviewHandler> handler;
    if (interactive) handler.emplace(std::cin, std::cout, cfg.max_subgroups);

    const auto result = agents::run_triplet_pipeline(ingest.comments, pipeline_cfg, *backend,
                                                     handler ? &*handler : nullptr);

    auto triplets_out = open_output(out_triplets);
    agents::write_triplets_jsonl(triplets_out, pipeline_to_triplets(result, cfg));
    auto background_out = open_output(out_background);
    agents::write_background_json(background_out, result.background, cfg.config_hash());

    std::cout << "analyzed " << ingest.comments.size() << " comments: " << result.triplets.size()
              << " triplets, " << result.skipped.count() << " skipped, " << result.review.size()
              << " for review\n";
    if (!result.review.empty())
        std::cout << "review queue written to " << pipeline_cfg.review_file << "\n";
    return 0;
}

int cmd_build_csn(const std::string& config_path, const Overrides& overrides,
                  const std::string& triplets_path, const std::string& output,
                  bool allow_mismatch) {
    const auto cfg = effective_config(config_path, overrides);
    const auto file = agents::read_triplets_file(triplets_path);
    check_artifact_hash(file.config_hash, cfg.config_hash(), "'" + triplets_path + "'",
                        allow_mismatch);

    const auto csn = csn::build_csn(file.triplets, file.subgroups,
                                    core::derive_seed(cfg.seed, "imputation"));
    auto out = open_output(output);
    csn::write_csn_json(out, csn, cfg.config_hash());
    std::cout << "built CSN over " << csn.subgroups.size() << " subgroups from "
              << file.triplets.size() << " triplets (N=" << csn.total_comments << ")\n";
    return 0;
}

int cmd_coi(const std::string& config_path, const Overrides& overrides,
            const std::string& csn_path, const std::string& output, bool allow_mismatch) {
    const auto cfg = effective_config(config_path, overrides);
    std::string artifact_hash;
    const auto csn = csn::read_csn_file(csn_path, &artifact_hash);
    check_artifact_hash(artifact_hash, cfg.config_hash(), "'" + csn_path + "'", allow_mismatch);

    const auto report = coi::coi(csn, cfg.coi_options());
    coi::print_report_table(std::cout, report);
    if (!output.empty()) {
        auto out = open_output(output);
        coi::write_report_json(out, report, cfg.config_hash());
    }
    return 0;
}

int cmd_series(const std::string& config_path, const Overrides& overrides,
               const std::string& input, const std::string& output) {
    const auto cfg = effective_config(config_path, overrides);
    const auto backend = cfg.make_backend();
    const auto ingest = core::read_comments_file(input, cfg.strict_ingest);
    report_ingest_issues(ingest);

    const auto window = core::parse_duration(cfg.window);
    const auto slices = core::slice_by_time(ingest.comments, window);
    const auto outcomes = coi::coi_series(slices, cfg.pipeline_config(), *backend,
                                          cfg.coi_options());

    json out_slices = json::array();
    for (const auto& outcome : outcomes) {
        json entry;
        entry["start"] = core::format_rfc3339(outcome.start);
        entry["end"] = core::format_rfc3339(outcome.end);
        if (outcome.report) {
            std::ostringstream buf;
            coi::write_report_json(buf, *outcome.report, cfg.config_hash());
            entry["coi"] = json::parse(buf.str());
        } else {
            entry["coi"] = nullptr;
            if (!outcome.error_code.empty())
                entry["error"] = {{"code", outcome.error_code},
                                  {"message", outcome.error_message}};
        }
        out_slices.push_back(entry);
    }

    json doc;
    doc["kind"] = "polar.series";
    doc["config_hash"] = cfg.config_hash();
    doc["window"] = cfg.window;
    doc["slices"] = out_slices;
    auto out = open_output(output);
    out << doc.dump(2) << '\n';
    std::cout << "series over " << slices.size() << " slices written to " << output << "\n";
    return 0;
}

int cmd_eval(const std::string& config_path, const Overrides& overrides,
             const std::string& dataset, const std::string& path, const std::string& split,
             const std::string& target_filter, long limit, long max_records,
             const std::string& output) {
    const auto cfg = effective_config(config_path, overrides);
    const auto kind = eval::dataset_from_name(dataset);

    auto records = eval::load_dataset(path, kind, split);
    if (!target_filter.empty()) {
        std::vector<eval::EvalRecord> filtered;
        for (auto& r : records)
            if (r.target == target_filter) filtered.push_back(std::move(r));
        if (filtered.empty())
            throw EmptyEval("no records with target '" + target_filter + "'");
        records = std::move(filtered);
    }

    eval::EvalOptions options;
    options.tau = cfg.tau;
    options.binary = kind == eval::DatasetKind::PStance; // no None class there
    options.limit = limit;
    options.stop_after = max_records;
    options.checkpoint_file = cfg.checkpoint_file;
    options.workers = cfg.workers;

    const auto backend = cfg.make_backend();
    const auto report = eval::run_zero_shot_eval(records, cfg.pipeline_config(), *backend, options);
    eval::print_eval_report_table(std::cout, report);
    if (!output.empty()) {
        auto out = open_output(output);
        eval::write_eval_report_json(out, report);
    }
    return report.partial && report.scored == 0 ? 1 : 0;
}

int cmd_export_dot(const std::string& csn_path, const std::string& output) {
    std::string artifact_hash;
    const auto csn = csn::read_csn_file(csn_path, &artifact_hash);
    auto out = open_output(output);
    out << cli::export_dot(csn, artifact_hash);
    std::cout << "wrote " << output << "\n";
    return 0;
}

int cmd_review_interactive(const std::string& file, const std::string& output,
                           int max_subgroups) {
    auto review = agents::read_review_file(file);
    agents::InteractiveReviewHandler handler(std::cin, std::cout, max_subgroups);
    handler.resolve(review.items, review.roster);
    const std::string out_path = output.empty() ? file : output;
    agents::write_review_file(out_path, review.items, review.roster, review.config_hash);
    std::cout << "wrote resolutions to " << out_path << "\n";
    return 0;
}

int cmd_review_apply(const std::string& config_path, const Overrides& overrides,
                     const std::string& resolved_path, const std::string& triplets_path,
                     const std::string& output, bool allow_mismatch) {
    const auto cfg = effective_config(config_path, overrides);
    const auto review = agents::read_review_file(resolved_path);
    auto file = agents::read_triplets_file(triplets_path);
    check_artifact_hash(file.config_hash, cfg.config_hash(), "'" + triplets_path + "'",
                        allow_mismatch);

    auto roster = file.subgroups;
    const auto upgraded =
        agents::apply_resolutions(file.triplets, review.items, roster, cfg.max_subgroups);
    file.subgroups = roster;
    agents::write_triplets_file(output.empty() ? triplets_path : output, file);
    std::cout << "upgraded " << upgraded << " triplets from the review file\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"group polarization measurement over social-media comments"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "TOML run configuration")->envname("POLAR_CONFIG");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "comments.jsonl -> triplets.jsonl + background.json");
    Overrides an_over;
    std::string an_input, an_triplets = "triplets.jsonl", an_background = "background.json";
    bool an_interactive = false;
    analyze->add_option("--input,-i", an_input, "comments JSONL")->required();
    analyze->add_option("--output-triplets,-o", an_triplets, "triplets output path");
    analyze->add_option("--output-background,-b", an_background, "background output path");
    analyze->add_flag("--interactive-review", an_interactive,
                      "resolve unclassifiable comments on the terminal");
    add_override_flags(analyze, an_over);

    // build-csn
    auto* build = app.add_subcommand("build-csn", "triplets.jsonl -> csn.json");
    Overrides bu_over;
    std::string bu_triplets, bu_output = "csn.json";
    bool bu_allow = false;
    build->add_option("--triplets,-t", bu_triplets, "triplets JSONL")->required();
    build->add_option("--output,-o", bu_output, "CSN output path");
    build->add_flag("--allow-hash-mismatch", bu_allow, "accept inputs from a different config");
    add_override_flags(build, bu_over);

    // coi
    auto* coi_cmd = app.add_subcommand("coi", "csn.json -> polarization report");
    Overrides co_over;
    std::string co_csn, co_output;
    bool co_allow = false;
    coi_cmd->add_option("--csn,-c", co_csn, "CSN JSON")->required();
    coi_cmd->add_option("--output,-o", co_output, "report JSON output path");
    coi_cmd->add_flag("--allow-hash-mismatch", co_allow, "accept inputs from a different config");
    add_override_flags(coi_cmd, co_over);

    // series
    auto* series = app.add_subcommand("series", "comments.jsonl -> per-slice polarization series");
    Overrides se_over;
    std::string se_input, se_output = "series.json";
    series->add_option("--input,-i", se_input, "comments JSONL")->required();
    series->add_option("--output,-o", se_output, "series output path");
    add_override_flags(series, se_over);

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "zero-shot stance detection evaluation");
    Overrides ev_over;
    std::string ev_dataset, ev_path, ev_split, ev_target, ev_output;
    long ev_limit = -1, ev_max_records = 0;
    eval_cmd->add_option("--dataset,-d", ev_dataset, "sem16 | pstance | vast")->required();
    eval_cmd->add_option("--path,-p", ev_path, "dataset file")->required();
    eval_cmd->add_option("--split", ev_split, "split name recorded in the report");
    eval_cmd->add_option("--target", ev_target, "restrict to one target");
    eval_cmd->add_option("--limit", ev_limit, "evaluate a seeded sample of this many records");
    eval_cmd->add_option("--max-records", ev_max_records,
                         "score at most this many new records this run (resume later)");
    eval_cmd->add_option("--output,-o", ev_output, "report JSON output path");
    add_override_flags(eval_cmd, ev_over);

    // export-dot
    auto* dot = app.add_subcommand("export-dot", "csn.json -> Graphviz DOT");
    std::string do_csn, do_output = "csn.dot";
    dot->add_option("--csn,-c", do_csn, "CSN JSON")->required();
    dot->add_option("--output,-o", do_output, "DOT output path");

    // review
    auto* review = app.add_subcommand("review", "resolve or apply the human review queue");
    Overrides re_over;
    std::string re_file, re_apply, re_triplets, re_output;
    review->add_option("--file,-f", re_file, "review file to resolve interactively");
    review->add_option("--apply,-a", re_apply, "resolved review file to merge");
    review->add_option("--triplets,-t", re_triplets, "triplets file to upgrade (with --apply)");
    review->add_option("--output,-o", re_output, "output path (defaults to in-place)");
    bool re_allow = false;
    review->add_flag("--allow-hash-mismatch", re_allow, "accept inputs from a different config");
    add_override_flags(review, re_over);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze)
            return cmd_analyze(config_path, an_over, an_input, an_triplets, an_background,
                               an_interactive);
        if (*build) return cmd_build_csn(config_path, bu_over, bu_triplets, bu_output, bu_allow);
        if (*coi_cmd) return cmd_coi(config_path, co_over, co_csn, co_output, co_allow);
        if (*series) return cmd_series(config_path, se_over, se_input, se_output);
        if (*eval_cmd)
            return cmd_eval(config_path, ev_over, ev_dataset, ev_path, ev_split, ev_target,
                            ev_limit, ev_max_records, ev_output);
        if (*dot) return cmd_export_dot(do_csn, do_output);
        if (*review) {
            if (!re_apply.empty()) {
                if (re_triplets.empty())
                    throw ConfigError("review --apply needs --triplets");
                return cmd_review_apply(config_path, re_over, re_apply, re_triplets, re_output,
                                        re_allow);
            }
            if (re_file.empty()) throw ConfigError("review needs --file or --apply");
            const auto cfg = effective_config(config_path, re_over);
            return cmd_review_interactive(re_file, re_output, cfg.max_subgroups);
        }
    } catch (const Error& e) {
        json err;
        err["error"] = {{"code", e.code()}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        json err;
        err["error"] = {{"code", "Internal"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 2;
    }
    return 0;
}

#include "polar/eval/runner.hpp"

#include "polar/core/errors.hpp"
#include "polar/core/rng.hpp"
#include "polar/csn/serialize.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <thread>

using nlohmann::json;

namespace polar::eval {

using agents::StanceLabel;

namespace {

StanceLabel stance_from_name(const std::string& name) {
    if (name == "Favor") return StanceLabel::Favor;
    if (name == "Against") return StanceLabel::Against;
    if (name == "None") return StanceLabel::None;
    throw FormatError("unknown stance name '" + name + "'");
}

struct RecordResult {
    std::optional<StanceLabel> prediction;
    double score = 0.0;
    std::string failure; // non-empty when the pipeline failed on this record
};

// checkpoint: header line + one line per completed record, appended as the
// run progresses so a killed process loses at most the record in flight
void append_checkpoint_line(std::ofstream& out, std::size_t idx, const RecordResult& r) {
    json j;
    j["idx"] = idx;
    if (r.failure.empty()) {
        j["pred"] = agents::stance_name(*r.prediction);
        j["score"] = json::parse(csn::format_double17(r.score));
    } else {
        j["failed"] = r.failure;
    }
    out << j.dump() << '\n';
    out.flush();
}

std::map<std::size_t, RecordResult> load_eval_checkpoint(const std::string& path,
                                                         const std::string& config_hash,
                                                         std::size_t selected_count) {
    std::map<std::size_t, RecordResult> done;
    std::ifstream in(path);
    if (!in) return done;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error&) {
            continue; // torn tail write from a killed run; everything before it stands
        }
        if (!have_header) {
            if (j.value("kind", "") != "polar.eval-checkpoint")
                throw CheckpointError("'" + path + "' is not an eval checkpoint");
            if (j.value("config_hash", "") != config_hash)
                throw CheckpointError("eval checkpoint '" + path +
                                      "' was produced by a different configuration");
            if (j.value("selected", std::size_t{0}) != selected_count)
                throw CheckpointError("eval checkpoint '" + path +
                                      "' covers a different record selection");
            have_header = true;
            continue;
        }
        RecordResult r;
        const auto idx = j.at("idx").get<std::size_t>();
        if (j.contains("failed")) {
            r.failure = j.at("failed").get<std::string>();
        } else {
            r.prediction = stance_from_name(j.at("pred").get<std::string>());
            r.score = j.at("score").get<double>();
        }
        done[idx] = std::move(r);
    }
    return done;
}

} // namespace

EvalReport run_zero_shot_eval(const std::vector<EvalRecord>& records,
                              const agents::PipelineConfig& cfg, agents::ChatBackend& backend,
                              const EvalOptions& options) {
    if (options.limit == 0) throw EmptyEval("--limit 0 selects no records");
    if (records.empty()) throw EmptyEval("no records loaded");

    // record selection (seeded sample when limited)
    std::vector<std::size_t> selected;
    if (options.limit > 0 && static_cast<std::size_t>(options.limit) < records.size()) {
        core::SeededRng rng(core::derive_seed(cfg.seed, "eval-sample"));
        selected = rng.sample_positions(records.size(), static_cast<std::size_t>(options.limit));
    } else {
        selected.resize(records.size());
        for (std::size_t i = 0; i < records.size(); ++i) selected[i] = i;
    }

    std::map<std::size_t, RecordResult> results; // keyed by selection slot
    const bool checkpointing = !options.checkpoint_file.empty();
    if (checkpointing)
        results = load_eval_checkpoint(options.checkpoint_file, cfg.config_hash, selected.size());

    std::vector<std::size_t> pending;
    for (std::size_t slot = 0; slot < selected.size(); ++slot)
        if (results.find(slot) == results.end()) pending.push_back(slot);
    if (options.stop_after > 0 && static_cast<std::size_t>(options.stop_after) < pending.size())
        pending.resize(static_cast<std::size_t>(options.stop_after));

    std::ofstream checkpoint_out;
    std::mutex checkpoint_mu;
    if (checkpointing && !pending.empty()) {
        const bool fresh = results.empty();
        checkpoint_out.open(options.checkpoint_file, fresh ? std::ios::trunc : std::ios::app);
        if (!checkpoint_out)
            throw CheckpointError("cannot open eval checkpoint '" + options.checkpoint_file + "'");
        if (fresh) {
            json header;
            header["kind"] = "polar.eval-checkpoint";
            header["config_hash"] = cfg.config_hash;
            header["selected"] = selected.size();
            checkpoint_out << header.dump() << '\n';
            checkpoint_out.flush();
        }
    }

    std::mutex results_mu;
    std::atomic<std::size_t> next{0};
    const double tau = options.binary ? -1.0 : options.tau;

    const auto work = [&]() {
        while (true) {
            const std::size_t w = next.fetch_add(1);
            if (w >= pending.size()) return;
            const std::size_t slot = pending[w];
            const auto& record = records[selected[slot]];
            RecordResult r;
            try {
                const auto outcome = agents::detect_stance(record.text, record.target, cfg,
                                                           backend, tau);
                r.prediction = outcome.label;
                r.score = outcome.score;
            } catch (const Error& e) {
                r.failure = std::string(e.code()) + ": " + e.what();
            }
            {
                std::lock_guard lock(results_mu);
                results[slot] = r;
            }
            if (checkpointing) {
                std::lock_guard lock(checkpoint_mu);
                append_checkpoint_line(checkpoint_out, slot, r);
            }
        }
    };

    const int workers = std::max(1, options.workers);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    // deterministic fold over selection order
    EvalReport report;
    report.tau = options.tau;
    report.binary = options.binary;
    report.config_hash = cfg.config_hash;
    report.selected = static_cast<std::int64_t>(selected.size());
    for (const auto& [role, agent] : cfg.agents)
        report.models[agents::role_name(role)] = agent.model_name;
    if (!records.empty()) report.dataset = dataset_name(records.front().dataset);

    for (std::size_t slot = 0; slot < selected.size(); ++slot) {
        const auto it = results.find(slot);
        if (it == results.end()) {
            report.pending += 1;
            continue;
        }
        const auto& record = records[selected[slot]];
        if (!it->second.failure.empty()) {
            report.failures += 1;
            continue;
        }
        const StanceLabel predicted = *it->second.prediction;
        report.overall.add(record.gold, predicted);
        auto& per_target = report.per_target[record.target];
        per_target.confusion.add(record.gold, predicted);
        per_target.scored += 1;
        report.scored += 1;
    }
    for (auto& [target, tr] : report.per_target) {
        tr.f_avg = f_avg(tr.confusion);
        tr.macro_f1 = macro_f1(tr.confusion);
    }

    const bool use_macro = !records.empty() && records.front().dataset == DatasetKind::Vast;
    report.metric_name = use_macro ? "Macro-F1" : "F_avg";
    report.metric_value = use_macro ? macro_f1(report.overall) : f_avg(report.overall);
    report.partial = report.failures > 0 || report.pending > 0;
    return report;
}

void write_eval_report_json(std::ostream& out, const EvalReport& report) {
    const auto num = [](double v) { return json::parse(csn::format_double17(v)); };
    const auto confusion_json = [&](const ConfusionCounts& c) {
        json j;
        for (StanceLabel s : {StanceLabel::Favor, StanceLabel::Against, StanceLabel::None}) {
            const auto& cls = c.of(s);
            j[agents::stance_name(s)] = {{"tp", cls.tp}, {"fp", cls.fp}, {"fn", cls.fn}};
        }
        return j;
    };

    json doc;
    doc["kind"] = "polar.eval";
    doc["config_hash"] = report.config_hash;
    doc["dataset"] = report.dataset;
    doc["metric"] = report.metric_name;
    doc["value"] = num(report.metric_value);
    doc["tau"] = num(report.tau);
    doc["binary_mapping"] = report.binary;
    doc["models"] = report.models;
    doc["selected"] = report.selected;
    doc["scored"] = report.scored;
    doc["failures"] = report.failures;
    doc["pending"] = report.pending;
    doc["partial"] = report.partial;
    doc["overall_confusion"] = confusion_json(report.overall);
    json targets = json::object();
    for (const auto& [target, tr] : report.per_target) {
        targets[target] = {{"confusion", confusion_json(tr.confusion)},
                           {"f_avg", num(tr.f_avg)},
                           {"macro_f1", num(tr.macro_f1)},
                           {"scored", tr.scored}};
    }
    doc["per_target"] = targets;
    out << doc.dump(2) << '\n';
}

void print_eval_report_table(std::ostream& out, const EvalReport& report) {
    char line[200];
    std::snprintf(line, sizeof line, "%-36s %8s %8s %8s", "target", "scored", "F_avg", "MacroF1");
    out << line << '\n' << std::string(64, '-') << '\n';
    for (const auto& [target, tr] : report.per_target) {
        std::snprintf(line, sizeof line, "%-36s %8lld %8.4f %8.4f", target.substr(0, 36).c_str(),
                      static_cast<long long>(tr.scored), tr.f_avg, tr.macro_f1);
        out << line << '\n';
    }
    out << std::string(64, '-') << '\n';
    out << report.metric_name << " = " << report.metric_value << "  (scored " << report.scored
        << "/" << report.selected << ", failures " << report.failures << ", pending "
        << report.pending << (report.partial ? ", PARTIAL" : "") << ")\n";
}

} // namespace polar::eval

#pragma once

#include "polar/agents/pipeline.hpp"
#include "polar/eval/dataset.hpp"
#include "polar/eval/metrics.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace polar::eval {

struct EvalOptions {
    double tau = 0.1;
    bool binary = false;          // sign-only mapping (P-Stance has no None class)
    long limit = -1;              // -1 = all records; >0 = seeded sample of that size
    long stop_after = 0;          // >0: score at most this many new records, then return PARTIAL
    std::string checkpoint_file;  // enables resumable runs
    int workers = 1;
};

struct TargetReport {
    ConfusionCounts confusion;
    double f_avg = 0.0;
    double macro_f1 = 0.0;
    std::int64_t scored = 0;
};

struct EvalReport {
    std::string dataset;
    std::string metric_name; // "F_avg" or "Macro-F1"
    double metric_value = 0.0;
    double tau = 0.0;
    bool binary = false;
    std::map<std::string, TargetReport> per_target;
    ConfusionCounts overall;
    std::int64_t selected = 0; // records selected for evaluation
    std::int64_t scored = 0;
    std::int64_t failures = 0;
    std::int64_t pending = 0;  // selected but not yet scored (stop_after runs)
    bool partial = false;      // failures > 0 or pending > 0
    std::string config_hash;
    std::map<std::string, std::string> models; // role -> model name
};

// Evaluates detect_stance over the records: per-record predictions, per-target
// confusion, F_avg (SEM16/P-Stance) or Macro-F1 (VAST). Per-record stage
// failures are recorded and excluded from the metrics; the run continues.
// With a checkpoint file, each scored record is appended as it completes and
// a rerun resumes where the previous one stopped, producing a report
// identical to an uninterrupted run.
EvalReport run_zero_shot_eval(const std::vector<EvalRecord>& records,
                              const agents::PipelineConfig& cfg, agents::ChatBackend& backend,
                              const EvalOptions& options);

void write_eval_report_json(std::ostream& out, const EvalReport& report);
void print_eval_report_table(std::ostream& out, const EvalReport& report);

} // namespace polar::eval

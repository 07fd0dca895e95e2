#pragma once

#include "polar/agents/types.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace polar::eval {

enum class DatasetKind { Sem16, PStance, Vast };

const char* dataset_name(DatasetKind kind);
DatasetKind dataset_from_name(const std::string& name);

// One labeled stance-detection instance. Gold Neutral covers both "None"
// (SEM16) and "Neutral" (VAST); P-Stance never carries it.
struct EvalRecord {
    std::string text;
    std::string target;
    agents::StanceLabel gold = agents::StanceLabel::None;
    DatasetKind dataset = DatasetKind::Sem16;
    std::string split; // train/dev/test when known
};

// Loads a dataset file in its published column layout:
//   SEM16    tab- or comma-separated with Target / Tweet / Stance columns and
//            FAVOR / AGAINST / NONE labels
//   P-Stance CSV with Tweet / Target / Stance columns and FAVOR / AGAINST
//            labels (a NONE label is a format violation)
//   VAST     CSV with post / new_topic (or topic_str) / label columns and
//            integer labels 0 = con, 1 = pro, 2 = neutral
// Column names are matched case-insensitively. Throws FormatError naming the
// missing column; an empty file (no data rows) is a FormatError too.
std::vector<EvalRecord> load_dataset(const std::string& path, DatasetKind kind,
                                     const std::string& split = "");

// RFC 4180 CSV/TSV rows (quoted fields, embedded delimiters and newlines).
std::vector<std::vector<std::string>> read_delimited(std::istream& in, char delimiter);

// Favor/Against/Neutral gold counts per target, for loader verification.
struct TargetCounts {
    std::int64_t favor = 0;
    std::int64_t against = 0;
    std::int64_t neutral = 0;
};
std::map<std::string, TargetCounts> count_by_target(const std::vector<EvalRecord>& records);

} // namespace polar::eval

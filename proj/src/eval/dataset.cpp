#include "polar/eval/dataset.hpp"

#include "polar/core/comments_io.hpp"
#include "polar/core/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace polar::eval {

using agents::StanceLabel;

const char* dataset_name(DatasetKind kind) {
    switch (kind) {
        case DatasetKind::Sem16: return "sem16";
        case DatasetKind::PStance: return "pstance";
        case DatasetKind::Vast: return "vast";
    }
    return "?";
}

DatasetKind dataset_from_name(const std::string& name) {
    std::string lower;
    for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (lower == "sem16" || lower == "semeval16" || lower == "semeval2016") return DatasetKind::Sem16;
    if (lower == "pstance" || lower == "p-stance") return DatasetKind::PStance;
    if (lower == "vast") return DatasetKind::Vast;
    throw FormatError("unknown dataset '" + name + "' (expected sem16, pstance or vast)");
}

std::vector<std::vector<std::string>> read_delimited(std::istream& in, char delimiter) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool row_has_data = false;

    char c;
    while (in.get(c)) {
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get();
                    field.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        if (c == '"' && field.empty()) {
            in_quotes = true;
            row_has_data = true;
        } else if (c == delimiter) {
            row.push_back(std::move(field));
            field.clear();
            row_has_data = true;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && in.peek() == '\n') in.get();
            if (row_has_data || !field.empty()) {
                row.push_back(std::move(field));
                field.clear();
                rows.push_back(std::move(row));
                row.clear();
                row_has_data = false;
            }
        } else {
            field.push_back(c);
            row_has_data = true;
        }
    }
    if (row_has_data || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

std::string lower(const std::string& s) {
    std::string out;
    for (char c : s) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return out;
}

// strips a UTF-8 BOM some published files carry
std::string strip_bom(std::string s) {
    if (s.size() >= 3 && static_cast<unsigned char>(s[0]) == 0xEF &&
        static_cast<unsigned char>(s[1]) == 0xBB && static_cast<unsigned char>(s[2]) == 0xBF)
        return s.substr(3);
    return s;
}

std::size_t find_column(const std::vector<std::string>& header,
                        const std::vector<std::string>& candidates, const std::string& path) {
    for (const auto& want : candidates)
        for (std::size_t i = 0; i < header.size(); ++i)
            if (lower(core::trim(strip_bom(header[i]))) == want) return i;
    throw FormatError("file '" + path + "' is missing a '" + candidates.front() + "' column");
}

StanceLabel parse_stance_word(const std::string& raw, const std::string& path) {
    const std::string v = lower(core::trim(raw));
    if (v == "favor" || v == "favour" || v == "pro") return StanceLabel::Favor;
    if (v == "against" || v == "con") return StanceLabel::Against;
    if (v == "none" || v == "neutral" || v == "neither") return StanceLabel::None;
    throw FormatError("file '" + path + "': unknown stance label '" + raw + "'");
}

} // namespace

std::vector<EvalRecord> load_dataset(const std::string& path, DatasetKind kind,
                                     const std::string& split) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open dataset file '" + path + "'");

    // delimiter sniff on the header line: official SEM16 files are
    // tab-separated, P-Stance and VAST are CSV
    std::string header_line;
    if (!std::getline(in, header_line)) throw FormatError("dataset file '" + path + "' is empty");
    const char delimiter = header_line.find('\t') != std::string::npos ? '\t' : ',';
    in.seekg(0);

    const auto rows = read_delimited(in, delimiter);
    if (rows.size() < 2)
        throw FormatError("dataset file '" + path + "' has no data rows");
    const auto& header = rows.front();

    std::vector<EvalRecord> records;
    if (kind == DatasetKind::Sem16 || kind == DatasetKind::PStance) {
        const auto text_col = find_column(header, {"tweet", "text", "sentence"}, path);
        const auto target_col = find_column(header, {"target", "topic"}, path);
        const auto stance_col = find_column(header, {"stance", "label"}, path);
        for (std::size_t r = 1; r < rows.size(); ++r) {
            const auto& row = rows[r];
            if (row.size() <= std::max({text_col, target_col, stance_col}))
                throw FormatError("file '" + path + "' row " + std::to_string(r + 1) +
                                  " has too few columns");
            EvalRecord rec;
            rec.text = row[text_col];
            rec.target = core::trim(row[target_col]);
            rec.gold = parse_stance_word(row[stance_col], path);
            rec.dataset = kind;
            rec.split = split;
            if (kind == DatasetKind::PStance && rec.gold == StanceLabel::None)
                throw FormatError("file '" + path + "' row " + std::to_string(r + 1) +
                                  ": P-Stance carries only Favor/Against labels");
            records.push_back(std::move(rec));
        }
    } else {
        const auto text_col = find_column(header, {"post", "text"}, path);
        const auto target_col = find_column(header, {"new_topic", "topic_str", "topic"}, path);
        const auto label_col = find_column(header, {"label"}, path);
        for (std::size_t r = 1; r < rows.size(); ++r) {
            const auto& row = rows[r];
            if (row.size() <= std::max({text_col, target_col, label_col}))
                throw FormatError("file '" + path + "' row " + std::to_string(r + 1) +
                                  " has too few columns");
            EvalRecord rec;
            rec.text = row[text_col];
            rec.target = core::trim(row[target_col]);
            const std::string label = core::trim(row[label_col]);
            if (label == "0") rec.gold = StanceLabel::Against;      // con
            else if (label == "1") rec.gold = StanceLabel::Favor;   // pro
            else if (label == "2") rec.gold = StanceLabel::None;    // neutral
            else
                throw FormatError("file '" + path + "' row " + std::to_string(r + 1) +
                                  ": VAST label must be 0, 1 or 2, got '" + label + "'");
            rec.dataset = kind;
            rec.split = split;
            records.push_back(std::move(rec));
        }
    }
    if (records.empty()) throw FormatError("dataset file '" + path + "' has no data rows");
    return records;
}

std::map<std::string, TargetCounts> count_by_target(const std::vector<EvalRecord>& records) {
    std::map<std::string, TargetCounts> counts;
    for (const auto& r : records) {
        auto& c = counts[r.target];
        switch (r.gold) {
            case StanceLabel::Favor: c.favor += 1; break;
            case StanceLabel::Against: c.against += 1; break;
            case StanceLabel::None: c.neutral += 1; break;
        }
    }
    return counts;
}

} // namespace polar::eval

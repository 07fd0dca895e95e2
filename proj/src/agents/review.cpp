#include "polar/agents/review.hpp"

#include "polar/core/comments_io.hpp"
#include "polar/core/errors.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <map>

using nlohmann::json;

namespace polar::agents {

namespace {

json subgroup_to_json(const core::Subgroup& g) {
    return {{"index", g.index}, {"label", g.label}, {"description", g.description}};
}

core::Subgroup subgroup_from_json(const json& j) {
    core::Subgroup g;
    g.index = j.at("index").get<int>();
    g.label = j.at("label").get<std::string>();
    g.description = j.value("description", "");
    return g;
}

} // namespace

void InteractiveReviewHandler::resolve(std::vector<ReviewItem>& items,
                                       std::vector<core::Subgroup>& roster) {
    for (auto& item : items) {
        out_ << "\nunclassified comment " << item.comment_id << ":\n  \"" << item.text << "\"\n";
        for (const auto& g : roster) out_ << "  " << g.index << ") " << g.label << "\n";
        out_ << "  n) new subgroup\n  s) skip\nchoice: " << std::flush;

        std::string line;
        if (!std::getline(in_, line)) break; // input exhausted: leave the rest unresolved
        line = core::trim(line);
        if (line == "s" || line.empty()) continue;
        if (line == "n") {
            if (static_cast<int>(roster.size()) >= max_subgroups_)
                throw SubgroupOverflow(
                    "cannot add a subgroup: roster already at the configured maximum (" +
                    std::to_string(max_subgroups_) +
                    "); merge overlapping subgroups or raise max_subgroups");
            out_ << "new subgroup label: " << std::flush;
            std::string label;
            if (!std::getline(in_, label)) break;
            label = core::trim(label);
            if (label.empty()) continue;
            core::Subgroup g;
            g.index = static_cast<int>(roster.size());
            g.label = label;
            g.description = "added during human review";
            roster.push_back(g);
            item.resolution = g.index;
            item.new_label = label;
            continue;
        }
        try {
            const int idx = std::stoi(line);
            if (idx >= 0 && idx < static_cast<int>(roster.size())) item.resolution = idx;
            else out_ << "no such subgroup, skipping\n";
        } catch (const std::exception&) {
            out_ << "unrecognized choice, skipping\n";
        }
    }
}

void write_review_file(const std::string& path, const std::vector<ReviewItem>& items,
                       const std::vector<core::Subgroup>& roster,
                       const std::string& config_hash) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ReviewFormatError("cannot open review file '" + path + "' for writing");

    json header;
    header["kind"] = "polar.review";
    header["config_hash"] = config_hash;
    json groups = json::array();
    for (const auto& g : roster) groups.push_back(subgroup_to_json(g));
    header["subgroups"] = groups;
    out << header.dump() << '\n';

    for (const auto& item : items) {
        json j;
        j["comment_id"] = item.comment_id;
        j["text"] = item.text;
        j["candidate_subgroups"] = item.candidate_subgroups;
        if (item.resolution)
            j["resolution"] = *item.resolution;
        else
            j["resolution"] = nullptr;
        out << j.dump() << '\n';
    }
}

ReviewFile read_review_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ReviewFormatError("cannot open review file '" + path + "'");

    ReviewFile file;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (core::trim(line).empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ReviewFormatError("line " + std::to_string(lineno) + ": " + e.what());
        }
        if (!have_header) {
            if (j.value("kind", "") != "polar.review")
                throw ReviewFormatError("line 1: expected a polar.review header object");
            file.config_hash = j.value("config_hash", "");
            for (const auto& g : j.value("subgroups", json::array()))
                file.roster.push_back(subgroup_from_json(g));
            have_header = true;
            continue;
        }
        try {
            ReviewItem item;
            item.comment_id = j.at("comment_id").get<std::string>();
            item.text = j.value("text", "");
            item.candidate_subgroups = j.value("candidate_subgroups", std::vector<int>{});
            const auto& res = j.at("resolution");
            if (res.is_null()) {
                // unresolved
            } else if (res.is_number_integer()) {
                item.resolution = res.get<int>();
            } else if (res.is_string()) {
                // label form: an existing roster label or a new one
                const std::string label = res.get<std::string>();
                bool found = false;
                for (const auto& g : file.roster) {
                    if (g.label == label) {
                        item.resolution = g.index;
                        found = true;
                        break;
                    }
                }
                if (!found) item.new_label = label;
            } else {
                throw ReviewFormatError("resolution must be null, an index or a label");
            }
            file.items.push_back(std::move(item));
        } catch (const ReviewFormatError&) {
            throw;
        } catch (const std::exception& e) {
            throw ReviewFormatError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!have_header) throw ReviewFormatError("review file '" + path + "' is empty");
    return file;
}

std::size_t apply_resolutions(std::vector<core::Triplet>& triplets,
                              const std::vector<ReviewItem>& resolved,
                              std::vector<core::Subgroup>& roster, int max_subgroups) {
    std::map<std::string, int> stance_by_comment;
    for (const auto& item : resolved) {
        int idx = -1;
        if (item.resolution) {
            idx = *item.resolution;
            if (idx < 0 || idx >= static_cast<int>(roster.size()))
                throw ReviewFormatError("resolution index " + std::to_string(idx) +
                                        " outside the roster for comment " + item.comment_id);
        } else if (!item.new_label.empty()) {
            if (static_cast<int>(roster.size()) >= max_subgroups)
                throw SubgroupOverflow("applying review would exceed max_subgroups (" +
                                       std::to_string(max_subgroups) +
                                       "); merge overlapping subgroups or raise the limit");
            core::Subgroup g;
            g.index = static_cast<int>(roster.size());
            g.label = item.new_label;
            g.description = "added during human review";
            roster.push_back(g);
            idx = g.index;
        } else {
            continue; // still unresolved
        }
        stance_by_comment[item.comment_id] = idx;
    }

    std::size_t upgraded = 0;
    for (auto& t : triplets) {
        if (t.stance) continue;
        const auto it = stance_by_comment.find(t.comment_id);
        if (it == stance_by_comment.end()) continue;
        t.stance = it->second;
        ++upgraded;
    }
    return upgraded;
}

} // namespace polar::agents

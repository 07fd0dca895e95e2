#include "polar/agents/artifacts_io.hpp"

#include "polar/core/comments_io.hpp"
#include "polar/core/errors.hpp"
#include "polar/csn/serialize.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

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

void write_triplets_jsonl(std::ostream& out, const TripletsFile& file) {
    json header;
    header["kind"] = "polar.triplets";
    header["config_hash"] = file.config_hash;
    header["seed"] = file.seed;
    json groups = json::array();
    for (const auto& g : file.subgroups) groups.push_back(subgroup_to_json(g));
    header["subgroups"] = groups;
    json skipped = json::array();
    for (const auto& s : file.skipped)
        skipped.push_back({{"comment_id", s.comment_id}, {"reason", s.reason}});
    header["skipped"] = skipped;
    out << header.dump() << '\n';

    for (const auto& t : file.triplets) {
        json j;
        j["comment_id"] = t.comment_id;
        if (t.stance)
            j["stance"] = *t.stance;
        else
            j["stance"] = nullptr;
        j["score"] = json::parse(csn::format_double17(t.score));
        j["target"] = t.target;
        j["likes"] = t.likes;
        out << j.dump() << '\n';
    }
}

void write_triplets_file(const std::string& path, const TripletsFile& file) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw FormatError("cannot open '" + path + "' for writing");
    write_triplets_jsonl(out, file);
}

TripletsFile read_triplets_jsonl(std::istream& in) {
    TripletsFile file;
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
            throw FormatError("triplets line " + std::to_string(lineno) + ": " + e.what());
        }
        if (!have_header) {
            if (j.value("kind", "") != "polar.triplets")
                throw FormatError("line 1: expected a polar.triplets header object");
            file.config_hash = j.value("config_hash", "");
            file.seed = j.value("seed", std::uint64_t{0});
            for (const auto& g : j.at("subgroups")) file.subgroups.push_back(subgroup_from_json(g));
            for (const auto& s : j.value("skipped", json::array()))
                file.skipped.push_back(
                    {s.at("comment_id").get<std::string>(), s.value("reason", "")});
            have_header = true;
            continue;
        }
        try {
            core::Triplet t;
            t.comment_id = j.at("comment_id").get<std::string>();
            if (!j.at("stance").is_null()) t.stance = j.at("stance").get<int>();
            t.score = j.at("score").get<double>();
            t.target = j.at("target").get<int>();
            t.likes = j.at("likes").get<std::int64_t>();
            file.triplets.push_back(std::move(t));
        } catch (const json::exception& e) {
            throw FormatError("triplets line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!have_header) throw FormatError("triplets stream has no header line");
    return file;
}

TripletsFile read_triplets_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open triplets file '" + path + "'");
    return read_triplets_jsonl(in);
}

void write_background_json(std::ostream& out, const Background& background,
                           const std::string& config_hash) {
    json doc;
    doc["kind"] = "polar.background";
    doc["config_hash"] = config_hash;
    doc["event_summary"] = background.event_summary;
    doc["timeline"] = background.timeline;
    doc["stakeholders"] = background.stakeholders;
    json groups = json::array();
    for (const auto& g : background.subgroups) groups.push_back(subgroup_to_json(g));
    doc["subgroups"] = groups;
    out << doc.dump(2) << '\n';
}

Background read_background_json(std::istream& in, std::string* config_hash_out) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("background parse error: ") + e.what());
    }
    if (doc.value("kind", "") != "polar.background")
        throw FormatError("not a polar.background document");
    Background bg;
    bg.event_summary = doc.at("event_summary").get<std::string>();
    bg.timeline = doc.value("timeline", "");
    bg.stakeholders = doc.value("stakeholders", std::vector<std::string>{});
    for (const auto& g : doc.value("subgroups", json::array()))
        bg.subgroups.push_back(subgroup_from_json(g));
    if (config_hash_out) *config_hash_out = doc.value("config_hash", "");
    return bg;
}

Background read_background_file(const std::string& path, std::string* config_hash_out) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open background file '" + path + "'");
    return read_background_json(in, config_hash_out);
}

} // namespace polar::agents

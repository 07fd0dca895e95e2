#include "polar/csn/serialize.hpp"

#include "polar/core/errors.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using nlohmann::json;

namespace polar::csn {

std::string format_double17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string quote(const std::string& s) { return json(s).dump(); }

} // namespace

void write_csn_json(std::ostream& out, const core::Csn& csn, const std::string& config_hash) {
    out << "{\n";
    out << "  \"kind\": \"polar.csn\",\n";
    out << "  \"config_hash\": " << quote(config_hash) << ",\n";
    out << "  \"seed\": " << csn.seed << ",\n";
    out << "  \"subgroups\": [\n";
    for (std::size_t i = 0; i < csn.subgroups.size(); ++i) {
        const auto& g = csn.subgroups[i];
        out << "    {\"index\": " << g.index << ", \"label\": " << quote(g.label)
            << ", \"description\": " << quote(g.description) << "}"
            << (i + 1 < csn.subgroups.size() ? "," : "") << "\n";
    }
    out << "  ],\n";
    out << "  \"edges\": [\n";
    std::size_t emitted = 0;
    std::size_t present = 0;
    for (const auto& c : csn.cells)
        if (c) ++present;
    for (std::size_t i = 0; i < csn.size(); ++i) {
        for (std::size_t j = 0; j < csn.size(); ++j) {
            const auto& cell = csn.cell(i, j);
            if (!cell) continue;
            ++emitted;
            out << "    {\"src\": " << i << ", \"tgt\": " << j
                << ", \"score\": " << format_double17(cell->score)
                << ", \"weight_sum\": " << format_double17(cell->weight_sum)
                << ", \"count\": " << cell->count << "}" << (emitted < present ? "," : "") << "\n";
        }
    }
    out << "  ],\n";
    out << "  \"comment_count\": [";
    for (std::size_t i = 0; i < csn.comment_count.size(); ++i)
        out << (i ? ", " : "") << csn.comment_count[i];
    out << "],\n";
    out << "  \"total_comments\": " << csn.total_comments << "\n";
    out << "}\n";
}

std::string csn_to_json(const core::Csn& csn, const std::string& config_hash) {
    std::ostringstream out;
    write_csn_json(out, csn, config_hash);
    return out.str();
}

core::Csn read_csn_json(std::istream& in, std::string* config_hash_out) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("csn.json parse error: ") + e.what());
    }
    if (!doc.is_object() || doc.value("kind", "") != "polar.csn")
        throw FormatError("not a polar.csn document");

    core::Csn csn;
    csn.seed = doc.value("seed", std::uint64_t{0});
    for (const auto& g : doc.at("subgroups")) {
        core::Subgroup sg;
        sg.index = g.at("index").get<int>();
        sg.label = g.at("label").get<std::string>();
        sg.description = g.value("description", "");
        csn.subgroups.push_back(std::move(sg));
    }
    const std::size_t n = csn.subgroups.size();
    csn.cells.assign(n * n, std::nullopt);
    for (const auto& e : doc.at("edges")) {
        const auto src = e.at("src").get<std::size_t>();
        const auto tgt = e.at("tgt").get<std::size_t>();
        if (src >= n || tgt >= n) throw FormatError("edge endpoint outside subgroup roster");
        core::Csn::EdgeData data;
        data.score = e.at("score").get<double>();
        data.weight_sum = e.at("weight_sum").get<double>();
        data.count = e.at("count").get<std::int64_t>();
        csn.cell(src, tgt) = data;
    }
    csn.comment_count = doc.at("comment_count").get<std::vector<std::int64_t>>();
    csn.total_comments = doc.at("total_comments").get<std::int64_t>();
    core::validate_csn(csn);
    if (config_hash_out) *config_hash_out = doc.value("config_hash", "");
    return csn;
}

core::Csn read_csn_file(const std::string& path, std::string* config_hash_out) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open CSN file '" + path + "'");
    return read_csn_json(in, config_hash_out);
}

} // namespace polar::csn

#include "polar/coi/coi.hpp"

#include "polar/core/errors.hpp"
#include "polar/core/time.hpp"
#include "polar/csn/builder.hpp"
#include "polar/csn/serialize.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <iomanip>
#include <ostream>

using nlohmann::json;

namespace polar::coi {

double hostility_term(double e) {
    return e <= 0.0 ? -e : 0.0;
}

double subgroup_polarization(const core::Csn& csn, std::size_t i, const CoiOptions& opts) {
    if (i >= csn.size())
        throw IndexError("subgroup index " + std::to_string(i) + " out of range");
    const double t_i = csn::internal_cohesion(csn, i, opts.cohesion_default);
    double hostility = 0.0;
    for (std::size_t j = 0; j < csn.size(); ++j) {
        if (j == i) continue;
        const auto e = csn.edge(i, j);
        if (e) hostility += hostility_term(*e);
    }
    return t_i * hostility;
}

CoiReport coi(const core::Csn& csn, const CoiOptions& opts) {
    if (csn.total_comments == 0) throw EmptyNetwork();

    CoiReport report;
    const double n_total = static_cast<double>(csn.total_comments);
    for (std::size_t i = 0; i < csn.size(); ++i) {
        SubgroupTerm term;
        term.subgroup = static_cast<int>(i);
        term.label = csn.subgroups[i].label;
        term.share = static_cast<double>(csn.comment_count[i]) / n_total;
        term.cohesion = csn::internal_cohesion(csn, i, opts.cohesion_default);
        term.hostility_sum = 0.0;
        for (std::size_t j = 0; j < csn.size(); ++j) {
            if (j == i) continue;
            const auto e = csn.edge(i, j);
            if (e) term.hostility_sum += hostility_term(*e);
        }
        term.contribution = term.share * term.cohesion * term.hostility_sum;
        report.per_subgroup.push_back(std::move(term));
    }
    // recomputed from the parts rather than accumulated along the way
    double total = 0.0;
    for (const auto& term : report.per_subgroup) total += term.contribution;
    report.total = total;
    return report;
}

void write_report_json(std::ostream& out, const CoiReport& report, const std::string& config_hash) {
    const auto num = [](double v) { return json::parse(csn::format_double17(v)); };
    json doc;
    doc["kind"] = "polar.coi";
    doc["config_hash"] = config_hash;
    doc["total"] = num(report.total);
    json groups = json::array();
    for (const auto& t : report.per_subgroup) {
        groups.push_back({{"subgroup", t.subgroup},
                          {"label", t.label},
                          {"share", num(t.share)},
                          {"cohesion", num(t.cohesion)},
                          {"hostility_sum", num(t.hostility_sum)},
                          {"contribution", num(t.contribution)}});
    }
    doc["per_subgroup"] = groups;
    if (report.slice_start) doc["slice_start"] = core::format_rfc3339(*report.slice_start);
    if (report.slice_end) doc["slice_end"] = core::format_rfc3339(*report.slice_end);
    out << doc.dump(2) << '\n';
}

CoiReport read_report_json(std::istream& in, std::string* config_hash_out) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("report parse error: ") + e.what());
    }
    if (doc.value("kind", "") != "polar.coi") throw FormatError("not a polar.coi document");
    CoiReport report;
    report.total = doc.at("total").get<double>();
    for (const auto& g : doc.at("per_subgroup")) {
        SubgroupTerm t;
        t.subgroup = g.at("subgroup").get<int>();
        t.label = g.value("label", "");
        t.share = g.at("share").get<double>();
        t.cohesion = g.at("cohesion").get<double>();
        t.hostility_sum = g.at("hostility_sum").get<double>();
        t.contribution = g.at("contribution").get<double>();
        report.per_subgroup.push_back(std::move(t));
    }
    if (doc.contains("slice_start"))
        report.slice_start = core::parse_rfc3339(doc.at("slice_start").get<std::string>());
    if (doc.contains("slice_end"))
        report.slice_end = core::parse_rfc3339(doc.at("slice_end").get<std::string>());
    if (config_hash_out) *config_hash_out = doc.value("config_hash", "");
    return report;
}

void print_report_table(std::ostream& out, const CoiReport& report) {
    char line[160];
    std::snprintf(line, sizeof line, "%-24s %8s %8s %10s %13s", "subgroup", "share", "t_i",
                  "hostility", "contribution");
    out << line << '\n';
    out << std::string(67, '-') << '\n';
    for (const auto& t : report.per_subgroup) {
        std::snprintf(line, sizeof line, "%-24s %8.4f %8.4f %10.4f %13.6f",
                      t.label.substr(0, 24).c_str(), t.share, t.cohesion, t.hostility_sum,
                      t.contribution);
        out << line << '\n';
    }
    out << std::string(67, '-') << '\n';
    std::snprintf(line, sizeof line, "%-24s %8s %8s %10s %13.6f", "total", "", "", "",
                  report.total);
    out << line << '\n';
}

} // namespace polar::coi

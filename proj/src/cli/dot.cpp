#include "polar/cli/dot.hpp"

#include <cctype>
#include <cstdio>
#include <set>
#include <sstream>

namespace polar::cli {

namespace {

bool is_plain_dot_id(const std::string& s) {
    if (s.empty()) return false;
    if (std::isdigit(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

std::string quote_dot(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

} // namespace

std::string export_dot(const core::Csn& csn, const std::string& config_hash) {
    // node ids: the bare label when it is a valid unique DOT identifier,
    // otherwise a quoted label (or sg<i> on duplicate labels)
    std::set<std::string> seen;
    std::vector<std::string> ids(csn.size());
    for (std::size_t i = 0; i < csn.size(); ++i) {
        const std::string& label = csn.subgroups[i].label;
        if (!label.empty() && seen.insert(label).second)
            ids[i] = is_plain_dot_id(label) ? label : quote_dot(label);
        else
            ids[i] = "sg" + std::to_string(i);
    }

    std::ostringstream out;
    out << "digraph csn {\n";
    if (!config_hash.empty()) out << "  // config_hash=" << config_hash << "\n";
    out << "  rankdir=LR;\n";
    out << "  node [shape=ellipse, style=filled, fillcolor=lightgoldenrod1];\n";
    for (std::size_t i = 0; i < csn.size(); ++i) {
        std::string label = quote_dot(csn.subgroups[i].label);
        label.pop_back(); // reopen the quoted string to append the count line
        label += "\\nn=" + std::to_string(csn.comment_count[i]) + "\"";
        out << "  " << ids[i] << " [label=" << label << "];\n";
    }
    for (std::size_t i = 0; i < csn.size(); ++i) {
        for (std::size_t j = 0; j < csn.size(); ++j) {
            const auto e = csn.edge(i, j);
            if (!e) continue;
            char label[32];
            std::snprintf(label, sizeof label, "%.2f", *e);
            const bool hostile = *e < 0.0;
            out << "  " << ids[i] << " -> " << ids[j] << " [label=\"" << label << "\", color="
                << (hostile ? "crimson" : "steelblue")
                << (hostile ? ", style=dashed" : "") << "];\n";
        }
    }
    out << "}\n";
    return out.str();
}

} // namespace polar::cli

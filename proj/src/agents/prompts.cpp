#include "polar/agents/prompts.hpp"

#include "polar/core/comments_io.hpp"
#include "polar/core/errors.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace polar::agents {

const std::vector<std::string>& PromptSet::required_names() {
    static const std::vector<std::string> names = {
        "domain_specialist",        "subgroup_explorer_roster", "subgroup_explorer_assign",
        "social_media_veteran",     "linguistic_expert",        "sentiment_expert",
        "polarization_assessor",
    };
    return names;
}

PromptSet PromptSet::load_dir(const std::string& dir) {
    PromptSet set;
    for (const auto& name : required_names()) {
        const std::string path = dir + "/" + name + ".txt";
        std::ifstream in(path);
        if (!in) throw ConfigError("missing prompt template '" + path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        set.templates[name] = buf.str();
    }
    return set;
}

const std::string& PromptSet::get(const std::string& name) const {
    auto it = templates.find(name);
    if (it == templates.end()) throw ConfigError("unknown prompt template '" + name + "'");
    return it->second;
}

std::string PromptSet::fingerprint_text() const {
    std::string all;
    for (const auto& [name, text] : templates) {
        all += name;
        all += '\0';
        all += text;
        all += '\0';
    }
    return all;
}

std::string render_template(const std::string& tmpl,
                            const std::map<std::string, std::string>& vars) {
    std::string out;
    out.reserve(tmpl.size());
    std::size_t pos = 0;
    while (pos < tmpl.size()) {
        const auto open = tmpl.find('{', pos);
        if (open == std::string::npos) {
            out.append(tmpl, pos, std::string::npos);
            break;
        }
        const auto close = tmpl.find('}', open + 1);
        if (close == std::string::npos) {
            out.append(tmpl, pos, std::string::npos);
            break;
        }
        const std::string key = tmpl.substr(open + 1, close - open - 1);
        const auto it = vars.find(key);
        if (it == vars.end()) {
            out.append(tmpl, pos, close + 1 - pos); // not a placeholder, keep literal
            pos = close + 1;
        } else {
            out.append(tmpl, pos, open - pos);
            out.append(it->second);
            pos = close + 1;
        }
    }
    return out;
}

std::string extract_tag(const std::string& text, const std::string& tag) {
    const std::string open = "<" + tag + ">";
    const std::string close = "</" + tag + ">";
    const auto begin = text.find(open);
    if (begin == std::string::npos) return "";
    const auto body = begin + open.size();
    const auto end = text.find(close, body);
    if (end == std::string::npos) return "";
    return core::trim(text.substr(body, end - body));
}

} // namespace polar::agents

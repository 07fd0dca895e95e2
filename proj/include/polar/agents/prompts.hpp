#pragma once

#include <map>
#include <string>
#include <vector>

namespace polar::agents {

// Prompt templates are external config, one text file per agent role (the
// subgroup explorer has a roster and an assignment prompt). Placeholders
// {background}, {subgroups}, {comment}, {comments}, {platform_notes},
// {linguistic_notes}, {sentiment_score}, {sentiment_target},
// {author_assignment}, {target} are substituted at call time; anything else
// in the template (JSON braces included) is left alone.
struct PromptSet {
    std::map<std::string, std::string> templates; // name -> template text

    static const std::vector<std::string>& required_names();

    // Loads <dir>/<name>.txt for every required name. Throws ConfigError on
    // a missing or unreadable file.
    static PromptSet load_dir(const std::string& dir);

    const std::string& get(const std::string& name) const;

    // Concatenation of all templates in name order; feeds the config hash so
    // edited prompts invalidate stale artifacts.
    std::string fingerprint_text() const;
};

// Replaces {key} tokens present in `vars`; unknown braces stay untouched.
std::string render_template(const std::string& tmpl,
                            const std::map<std::string, std::string>& vars);

// Returns the trimmed text between <tag> and </tag> in `text`, or "" when the
// tag is absent. The stock templates wrap every substituted value in such
// tags, which is what lets the mock backend read its inputs back out of the
// rendered prompt.
std::string extract_tag(const std::string& text, const std::string& tag);

} // namespace polar::agents

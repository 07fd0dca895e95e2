#include "polar/agents/mock_backend.hpp"

#include "polar/agents/prompts.hpp"
#include "polar/core/comments_io.hpp"
#include "polar/core/errors.hpp"
#include "polar/core/score.hpp"
#include "polar/core/time.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

using nlohmann::json;

namespace polar::agents {

namespace mock_rules {

const std::vector<LexiconSubgroup>& subgroup_lexicon() {
    static const std::vector<LexiconSubgroup> lex = {
        {"Pro-Ukraine",
         "Voices siding with Ukraine: solidarity slogans, flag emojis, praise for Ukrainian "
         "resistance, condemnation of the invasion",
         {"ukraine", "ukrainian", "ukrainians", "kyiv", "zelensky", "slavaukraini",
          "slava ukraini", "\xF0\x9F\x87\xBA\xF0\x9F\x87\xA6"}},
        {"Pro-Russia",
         "Voices siding with Russia: defense of the Kremlin's narrative, praise for Russian "
         "forces, distrust of Western coverage",
         {"russia", "russian", "russians", "putin", "kremlin", "moscow",
          "\xF0\x9F\x87\xB7\xF0\x9F\x87\xBA"}},
        {"Group A", "Speakers aligned with Group A", {"group a"}},
        {"Group B", "Speakers aligned with Group B", {"group b"}},
    };
    return lex;
}

const std::vector<std::pair<std::string, double>>& sentiment_lexicon() {
    static const std::vector<std::pair<std::string, double>> lex = {
        {"hero", 0.6},      {"heroes", 0.6},    {"heroic", 0.6},     {"save", 0.7},
        {"saves", 0.7},     {"saved", 0.7},     {"brave", 0.5},      {"glory", 0.5},
        {"victory", 0.5},   {"love", 0.6},      {"support", 0.4},    {"proud", 0.5},
        {"brilliant", 0.6}, {"strong", 0.4},    {"peace", 0.3},      {"defend", 0.4},
        {"defending", 0.4}, {"best", 0.5},      {"great", 0.4},      {"win", 0.4},
        {"winning", 0.4},   {"w", 0.4},         {"based", 0.4},      {"admire", 0.5},
        {"traitor", -0.8},  {"traitors", -0.8}, {"criminal", -0.7},  {"criminals", -0.7},
        {"invader", -0.7},  {"invaders", -0.7}, {"invasion", -0.5},  {"liar", -0.6},
        {"liars", -0.6},    {"lies", -0.5},     {"corrupt", -0.6},   {"disgrace", -0.7},
        {"shame", -0.6},    {"shameful", -0.6}, {"propaganda", -0.5},{"terrorist", -0.9},
        {"terrorists", -0.9},{"murderer", -0.9},{"murderers", -0.9}, {"evil", -0.8},
        {"hate", -0.6},     {"awful", -0.6},    {"fail", -0.5},      {"failing", -0.5},
        {"lose", -0.4},     {"losing", -0.4},   {"l", -0.4},         {"ratio", -0.4},
        {"cringe", -0.4},   {"copium", -0.3},   {"cowards", -0.7},   {"puppet", -0.6},
        {"puppets", -0.6},  {"thug", -0.7},     {"thugs", -0.7},
    };
    return lex;
}

const std::vector<std::pair<std::string, std::string>>& slang_lexicon() {
    static const std::vector<std::pair<std::string, std::string>> lex = {
        {"slavaukraini",
         "hashtag #SlavaUkraini, the pro-Ukraine slogan \"Glory to Ukraine\""},
        {"\xF0\x9F\x87\xBA\xF0\x9F\x87\xA6", "Ukrainian flag emoji signalling pro-Ukraine alignment"},
        {"\xF0\x9F\x87\xB7\xF0\x9F\x87\xBA", "Russian flag emoji signalling pro-Russia alignment"},
        {"ratio", "internet slang 'ratio': the replied-to post is being publicly rejected"},
        {"l", "internet slang 'L': a loss"},
        {"w", "internet slang 'W': a win"},
        {"copium", "internet slang 'copium': coping with an unwelcome outcome"},
        {"based", "internet slang 'based': approval of an unapologetic statement"},
        {"cringe", "internet slang 'cringe': second-hand embarrassment"},
        {"psyop", "internet slang 'psyop': dismissing content as manipulation"},
    };
    return lex;
}

const std::vector<std::string>& sarcasm_cues() {
    static const std::vector<std::string> cues = {
        "oh sure", "yeah right", "sure thing", "how convenient",
        "what could possibly go wrong", "totally believable",
    };
    return cues;
}

std::string normalize(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (unsigned char c : text) {
        if (c < 0x80)
            out.push_back(std::isalnum(c) ? static_cast<char>(std::tolower(c)) : ' ');
        else
            out.push_back(static_cast<char>(c));
    }
    return out;
}

std::vector<std::string> tokens(const std::string& text) {
    std::vector<std::string> toks;
    std::istringstream in(normalize(text));
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

bool contains_phrase(const std::string& text, const std::string& phrase) {
    const std::string padded = " " + normalize(text) + " ";
    const std::string needle = " " + normalize(phrase) + " ";
    return padded.find(needle) != std::string::npos;
}

namespace {

bool is_ascii(const std::string& s) {
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return c < 0x80; });
}

// position of the keyword in the text, or npos
std::size_t find_keyword(const std::string& raw_text, const std::string& keyword) {
    if (!is_ascii(keyword)) return raw_text.find(keyword); // emoji etc.
    const std::string padded = " " + normalize(raw_text) + " ";
    const std::string needle = " " + normalize(keyword) + " ";
    const auto pos = padded.find(needle);
    return pos == std::string::npos ? std::string::npos : pos;
}

const std::set<std::string>& acronym_allowlist() {
    static const std::set<std::string> list = {"NATO", "USA", "USSR", "EU", "UN",
                                               "UK",   "US",  "TV",   "URL"};
    return list;
}

const std::set<std::string>& label_stopwords() {
    static const std::set<std::string> words = {"of", "the", "is", "a", "an", "for",
                                                "and", "or", "in", "on", "to"};
    return words;
}

} // namespace

bool has_sarcasm_cue(const std::string& text) {
    for (const auto& cue : sarcasm_cues())
        if (contains_phrase(text, cue)) return true;
    // all-caps emphasis: SHOUTED words of 4+ letters that are not acronyms
    std::istringstream in(text);
    std::string word;
    while (in >> word) {
        std::string letters;
        for (char c : word)
            if (std::isalpha(static_cast<unsigned char>(c))) letters.push_back(c);
        if (letters.size() >= 4 && acronym_allowlist().count(letters) == 0 &&
            std::all_of(letters.begin(), letters.end(),
                        [](unsigned char c) { return std::isupper(c); }))
            return true;
    }
    return false;
}

double sentiment_score(const std::string& text) {
    std::map<std::string, double> table(sentiment_lexicon().begin(), sentiment_lexicon().end());
    double sum = 0.0;
    int hits = 0;
    for (const auto& tok : tokens(text)) {
        const auto it = table.find(tok);
        if (it != table.end()) {
            sum += it->second;
            ++hits;
        }
    }
    if (hits == 0) return 0.0;
    double score = sum / hits;
    if (has_sarcasm_cue(text)) score = -score;
    return core::clamp_score(score);
}

std::vector<std::string> keywords_for_label(const std::string& label,
                                            const std::vector<std::string>& ambiguous) {
    for (const auto& entry : subgroup_lexicon())
        if (entry.label == label) return entry.keywords;

    std::vector<std::string> kws;
    kws.push_back(normalize(label)); // the full phrase
    const std::set<std::string> skip(ambiguous.begin(), ambiguous.end());
    for (const auto& tok : tokens(label)) {
        if (tok.size() < 3) continue;
        if (label_stopwords().count(tok) || skip.count(tok)) continue;
        kws.push_back(tok);
    }
    return kws;
}

int detect_target(const std::string& text, const std::vector<std::string>& roster_labels) {
    // words shared between several labels cannot disambiguate a target
    std::map<std::string, int> word_owners;
    for (const auto& label : roster_labels)
        for (const auto& tok : tokens(label)) word_owners[tok] += 1;
    std::vector<std::string> ambiguous;
    for (const auto& [word, owners] : word_owners)
        if (owners > 1) ambiguous.push_back(word);

    int best = -1;
    std::size_t best_pos = std::string::npos;
    for (std::size_t i = 0; i < roster_labels.size(); ++i) {
        for (const auto& kw : keywords_for_label(roster_labels[i], ambiguous)) {
            const auto pos = find_keyword(text, kw);
            if (pos == std::string::npos) continue;
            if (pos < best_pos) {
                best_pos = pos;
                best = static_cast<int>(i);
            }
        }
    }
    return best;
}

} // namespace mock_rules

namespace {

using namespace mock_rules;

std::string all_content(const std::vector<ChatMessage>& messages) {
    std::string all;
    for (const auto& m : messages) {
        all += m.content;
        all += '\n';
    }
    return all;
}

// comment lines rendered as "- <rfc3339> | <text>"
struct CorpusLine {
    std::string timestamp;
    std::string text;
};

std::vector<CorpusLine> parse_corpus(const std::string& block) {
    std::vector<CorpusLine> lines;
    std::istringstream in(block);
    std::string line;
    while (std::getline(in, line)) {
        line = core::trim(line);
        if (line.empty()) continue;
        if (line.rfind("- ", 0) == 0) line = line.substr(2);
        const auto sep = line.find(" | ");
        CorpusLine cl;
        if (sep != std::string::npos) {
            cl.timestamp = core::trim(line.substr(0, sep));
            cl.text = line.substr(sep + 3);
        } else {
            cl.text = line;
        }
        lines.push_back(std::move(cl));
    }
    return lines;
}

std::vector<std::string> parse_roster_labels(const std::string& block) {
    // roster rendered as "<index>: <label> -- <description>" lines
    std::vector<std::string> labels;
    std::istringstream in(block);
    std::string line;
    while (std::getline(in, line)) {
        line = core::trim(line);
        if (line.empty()) continue;
        auto colon = line.find(": ");
        if (colon == std::string::npos) continue;
        std::string rest = line.substr(colon + 2);
        const auto dash = rest.find(" -- ");
        if (dash != std::string::npos) rest = rest.substr(0, dash);
        labels.push_back(core::trim(rest));
    }
    return labels;
}

const std::set<std::string>& capitalized_stopwords() {
    static const std::set<std::string> words = {
        "The",  "A",    "An",   "I",     "It",    "Its",   "This", "That",  "These", "Those",
        "They", "Them", "Their","We",    "He",    "She",   "You",  "Your",  "My",    "Our",
        "If",   "But",  "And",  "Or",    "Oh",    "Not",   "No",   "Yes",   "Is",    "Are",
        "Was",  "Were", "Do",   "Does",  "Did",   "On",    "In",   "At",    "To",    "Of",
        "For",  "With", "From", "As",    "So",    "Just",  "What", "Who",   "Why",   "How",
        "When", "Where","Every","Everyone","Nobody","Someone","People","Stop", "Please",
    };
    return words;
}

bool is_title_case_token(const std::string& w) {
    if (w.size() < 2) return false;
    if (!std::isupper(static_cast<unsigned char>(w[0]))) return false;
    bool has_lower = false;
    for (char c : w) {
        if (!std::isalpha(static_cast<unsigned char>(c))) return false;
        if (std::islower(static_cast<unsigned char>(c))) has_lower = true;
    }
    return has_lower; // all-caps words are emphasis/acronyms, not names
}

// Top named parties by mention count, ties alphabetical.
std::vector<std::string> top_stakeholders(const std::vector<CorpusLine>& corpus, std::size_t k) {
    std::map<std::string, int> counts;
    for (const auto& line : corpus) {
        std::istringstream in(line.text);
        std::string raw;
        while (in >> raw) {
            std::string word;
            for (char c : raw)
                if (std::isalpha(static_cast<unsigned char>(c))) word.push_back(c);
            if (is_title_case_token(word) && capitalized_stopwords().count(word) == 0)
                counts[word] += 1;
        }
    }
    std::vector<std::pair<std::string, int>> ranked(counts.begin(), counts.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<std::string> out;
    for (std::size_t i = 0; i < ranked.size() && i < k; ++i) out.push_back(ranked[i].first);
    return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

json mock_domain_specialist(const std::string& prompt) {
    const auto corpus = parse_corpus(extract_tag(prompt, "comments"));
    const auto stakeholders = top_stakeholders(corpus, 5);

    std::string summary;
    if (stakeholders.empty())
        summary = "Online discussion with no prominent named parties; " +
                  std::to_string(corpus.size()) + " comments analyzed.";
    else
        summary = "Online discussion centered on " + join(stakeholders, ", ") + "; " +
                  std::to_string(corpus.size()) + " comments analyzed.";

    std::string first, last;
    for (const auto& line : corpus) {
        if (line.timestamp.empty()) continue;
        if (first.empty() || line.timestamp < first) first = line.timestamp;
        if (last.empty() || line.timestamp > last) last = line.timestamp;
    }
    std::string timeline = first.empty()
                               ? "No timestamps available."
                               : "Comments observed from " + first + " to " + last + ".";

    json reply;
    reply["event_summary"] = summary;
    reply["timeline"] = timeline;
    reply["stakeholders"] = stakeholders;
    return reply;
}

json mock_explorer_roster(const std::string& prompt) {
    const auto corpus = parse_corpus(extract_tag(prompt, "comments"));
    json groups = json::array();
    for (const auto& entry : subgroup_lexicon()) {
        bool seen = false;
        for (const auto& line : corpus) {
            for (const auto& kw : entry.keywords) {
                if (find_keyword(line.text, kw) != std::string::npos) {
                    seen = true;
                    break;
                }
            }
            if (seen) break;
        }
        if (seen) groups.push_back({{"label", entry.label}, {"description", entry.description}});
    }
    return json{{"subgroups", groups}};
}

json mock_explorer_assign(const std::string& prompt) {
    const std::string comment = extract_tag(prompt, "comment");
    const auto labels = parse_roster_labels(extract_tag(prompt, "subgroups"));

    const int target = detect_target(comment, labels);
    const double score = sentiment_score(comment);

    std::string assignment = "uncertain";
    if (target >= 0 && score > 0.0) {
        assignment = labels[static_cast<std::size_t>(target)]; // praising a group from within
    } else if (target >= 0 && score < 0.0 && labels.size() == 2) {
        assignment = labels[static_cast<std::size_t>(1 - target)]; // binary opposition
    }
    return json{{"assignment", assignment}};
}

json mock_social_media_veteran(const std::string& prompt) {
    const std::string comment = extract_tag(prompt, "comment");
    std::vector<std::string> notes;

    // lexicon hits in order of appearance
    std::vector<std::pair<std::size_t, std::string>> hits;
    for (const auto& [token, reading] : slang_lexicon()) {
        const auto pos = find_keyword(comment, token);
        if (pos != std::string::npos) hits.emplace_back(pos, reading);
    }
    // unrecognized hashtags still get named
    std::istringstream in(comment);
    std::string raw;
    while (in >> raw) {
        if (raw.size() > 1 && raw[0] == '#') {
            std::string tag = raw.substr(1);
            while (!tag.empty() && std::ispunct(static_cast<unsigned char>(tag.back())))
                tag.pop_back();
            bool known = false;
            for (const auto& [token, reading] : slang_lexicon())
                if (normalize(tag) == token) known = true;
            if (!known && !tag.empty())
                hits.emplace_back(comment.find(raw), "hashtag #" + tag + " (no special reading)");
        }
    }
    std::stable_sort(hits.begin(), hits.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [pos, reading] : hits) notes.push_back(reading);

    const std::string text = notes.empty() ? "no platform-specific constructs detected"
                                           : join(notes, "; ");
    return json{{"notes", text}};
}

json mock_linguistic_expert(const std::string& prompt) {
    const std::string comment = extract_tag(prompt, "comment");

    std::string form = "declarative";
    if (comment.find('?') != std::string::npos) form = "interrogative";
    else if (comment.find('!') != std::string::npos) form = "exclamatory";

    std::string person = "third";
    if (contains_phrase(comment, "i") || contains_phrase(comment, "we") ||
        contains_phrase(comment, "my") || contains_phrase(comment, "our") ||
        contains_phrase(comment, "me") || contains_phrase(comment, "us"))
        person = "first";
    else if (contains_phrase(comment, "you") || contains_phrase(comment, "your"))
        person = "second";

    std::string tense = "present";
    if (contains_phrase(comment, "will") || contains_phrase(comment, "shall") ||
        contains_phrase(comment, "gonna"))
        tense = "future";
    else if (contains_phrase(comment, "was") || contains_phrase(comment, "were") ||
             contains_phrase(comment, "did") || contains_phrase(comment, "had"))
        tense = "past";

    std::string notes = form + " sentence; " + person + " person; " + tense + " tense";

    std::vector<std::string> cues;
    for (const auto& cue : sarcasm_cues())
        if (contains_phrase(comment, cue)) cues.push_back("phrase \"" + cue + "\"");
    std::istringstream in(comment);
    std::string word;
    while (in >> word) {
        std::string letters;
        for (char c : word)
            if (std::isalpha(static_cast<unsigned char>(c))) letters.push_back(c);
        if (letters.size() >= 4 && acronym_allowlist().count(letters) == 0 &&
            std::all_of(letters.begin(), letters.end(),
                        [](unsigned char c) { return std::isupper(c); }))
            cues.push_back("capitalized emphasis \"" + letters + "\"");
    }
    if (!cues.empty()) notes += "; sarcasm cues: " + join(cues, ", ");
    return json{{"notes", notes}};
}

json mock_sentiment_expert(const std::string& prompt) {
    const std::string comment = extract_tag(prompt, "comment");
    const auto labels = parse_roster_labels(extract_tag(prompt, "subgroups"));

    const double score = sentiment_score(comment);
    const int target = detect_target(comment, labels);

    json reply;
    reply["sentiment"] = score;
    if (target >= 0)
        reply["target"] = labels[static_cast<std::size_t>(target)];
    else
        reply["target"] = nullptr;
    return reply;
}

json mock_polarization_assessor(const std::string& prompt) {
    const std::string score_text = extract_tag(prompt, "sentiment_score");
    const std::string target = extract_tag(prompt, "sentiment_target");
    const std::string assignment = extract_tag(prompt, "author_assignment");

    json reply;
    reply["score"] = score_text.empty() ? 0.0 : std::stod(score_text);
    if (target.empty() || target == "none")
        reply["target"] = nullptr;
    else
        reply["target"] = target;
    if (assignment.empty() || assignment == "unresolved")
        reply["stance"] = nullptr;
    else
        reply["stance"] = assignment;
    return reply;
}

} // namespace

std::string MockBackend::complete(const std::vector<ChatMessage>& messages,
                                  const AgentConfig& config) {
    const std::string prompt = all_content(messages);
    json reply;
    switch (config.role) {
        case AgentRole::DomainSpecialist:
            reply = mock_domain_specialist(prompt);
            break;
        case AgentRole::SubgroupExplorer:
            // roster pass reads the whole corpus, assignment passes read one comment
            reply = extract_tag(prompt, "comment").empty() ? mock_explorer_roster(prompt)
                                                           : mock_explorer_assign(prompt);
            break;
        case AgentRole::SocialMediaVeteran:
            reply = mock_social_media_veteran(prompt);
            break;
        case AgentRole::LinguisticExpert:
            reply = mock_linguistic_expert(prompt);
            break;
        case AgentRole::SentimentExpert:
            reply = mock_sentiment_expert(prompt);
            break;
        case AgentRole::PolarizationAssessor:
            reply = mock_polarization_assessor(prompt);
            break;
    }
    return reply.dump();
}

} // namespace polar::agents

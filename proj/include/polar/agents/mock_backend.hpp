#pragma once

#include "polar/agents/backend.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace polar::agents {

// The mock backend is a fully specified rule system standing in for the
// remote models: a sentiment lexicon, a slang/hashtag lexicon, a sarcasm-cue
// list (a cue flips the sentiment sign) and keyword-based subgroup
// assignment. Tables are exposed so tests can use them as independent
// oracles.
namespace mock_rules {

struct LexiconSubgroup {
    std::string label;
    std::string description;
    std::vector<std::string> keywords; // lowercase word sequences; non-ASCII = raw substring
};

const std::vector<LexiconSubgroup>& subgroup_lexicon();
const std::vector<std::pair<std::string, double>>& sentiment_lexicon(); // token -> score
const std::vector<std::pair<std::string, std::string>>& slang_lexicon(); // token -> reading
const std::vector<std::string>& sarcasm_cues(); // lowercase phrases

// Lowercases and maps every non-alphanumeric ASCII byte to a space
// (non-ASCII bytes pass through so emoji survive).
std::string normalize(const std::string& text);

// Whitespace-split tokens of normalize(text).
std::vector<std::string> tokens(const std::string& text);

// True when `phrase` occurs in `text` on word boundaries (both normalized).
bool contains_phrase(const std::string& text, const std::string& phrase);

// Mean lexicon score over matched token occurrences, sign-flipped when a
// sarcasm cue is present. 0.0 when no sentiment token matches.
double sentiment_score(const std::string& text);

// True when the text carries a sarcasm cue: a cue phrase or an all-caps
// emphasis word of 4+ letters (known acronyms excluded).
bool has_sarcasm_cue(const std::string& text);

// Keywords used to spot a subgroup in comment text. Lexicon labels use their
// curated keyword list; other labels fall back to the lowercase label phrase
// plus its distinctive words. `ambiguous` holds words shared by several
// roster labels, which are skipped.
std::vector<std::string> keywords_for_label(const std::string& label,
                                            const std::vector<std::string>& ambiguous);

// Earliest keyword match across the roster; ties break toward the lower
// index. Returns -1 when nothing matches.
int detect_target(const std::string& text, const std::vector<std::string>& roster_labels);

} // namespace mock_rules

// Deterministic offline stand-in for the chat backend. Replies are a pure
// function of the rendered prompt (it reads the tagged sections the stock
// templates embed) and the agent role; the network is never touched.
class MockBackend : public ChatBackend {
public:
    std::string complete(const std::vector<ChatMessage>& messages,
                         const AgentConfig& config) override;
};

} // namespace polar::agents

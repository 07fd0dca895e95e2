#include "polar/agents/mock_backend.hpp"

#include "polar/agents/prompts.hpp"

#include <doctest.h>

#include <nlohmann/json.hpp>

using namespace polar;
using namespace polar::agents;
using nlohmann::json;

namespace {

// lexicon-table oracle: look the token up directly
double lexicon_score(const std::string& token) {
    for (const auto& [word, score] : mock_rules::sentiment_lexicon())
        if (word == token) return score;
    FAIL("token missing from lexicon: ", token);
    return 0.0;
}

std::string call(MockBackend& backend, AgentRole role, const std::string& prompt) {
    AgentConfig cfg;
    cfg.role = role;
    return backend.complete({{"user", prompt}}, cfg);
}

} // namespace

TEST_CASE("normalize and tokens") {
    CHECK(mock_rules::normalize("Hello, World!") == "hello  world ");
    const auto toks = mock_rules::tokens("ratio + L for every Kremlin bot");
    CHECK(toks == std::vector<std::string>{"ratio", "l", "for", "every", "kremlin", "bot"});
}

TEST_CASE("contains_phrase respects word boundaries") {
    CHECK(mock_rules::contains_phrase("I support this", "i"));
    CHECK_FALSE(mock_rules::contains_phrase("because of this", "us"));
    CHECK(mock_rules::contains_phrase("oh sure, why not", "oh sure"));
    CHECK_FALSE(mock_rules::contains_phrase("ohsure", "oh sure"));
}

TEST_CASE("sentiment scores come straight from the lexicon") {
    CHECK(mock_rules::sentiment_score("Group A are heroes") == lexicon_score("heroes"));
    CHECK(mock_rules::sentiment_score("Group A are traitors") == lexicon_score("traitors"));
    CHECK(mock_rules::sentiment_score("Hillary will save this country") == lexicon_score("save"));
    CHECK(mock_rules::sentiment_score("I had lunch") == 0.0);
    // multiple hits average
    const double expected = (lexicon_score("liars") + lexicon_score("criminals")) / 2.0;
    CHECK(mock_rules::sentiment_score("liars and criminals") == doctest::Approx(expected));
}

TEST_CASE("sarcasm cues flip the sentiment sign") {
    CHECK(mock_rules::has_sarcasm_cue("Oh sure, ANOTHER brilliant move."));
    CHECK(mock_rules::has_sarcasm_cue("ANOTHER day"));      // all-caps emphasis
    CHECK(mock_rules::has_sarcasm_cue("yeah right buddy")); // cue phrase
    CHECK_FALSE(mock_rules::has_sarcasm_cue("I support X."));
    CHECK_FALSE(mock_rules::has_sarcasm_cue("NATO said so")); // acronym allowlist

    CHECK(mock_rules::sentiment_score("Oh sure, ANOTHER brilliant move.") ==
          -lexicon_score("brilliant"));
}

TEST_CASE("target detection picks the earliest keyword, lower index on ties") {
    const std::vector<std::string> roster = {"Pro-Ukraine", "Pro-Russia"};
    CHECK(mock_rules::detect_target("Russia is winning", roster) == 1);
    CHECK(mock_rules::detect_target("Ukraine will prevail", roster) == 0);
    CHECK(mock_rules::detect_target("talks between Russia and Ukraine", roster) == 1);
    CHECK(mock_rules::detect_target("the weather is nice", roster) == -1);
}

TEST_CASE("shared label words cannot disambiguate a target") {
    const std::vector<std::string> roster = {"Group A", "Group B"};
    // "group" appears in both labels, so only the full phrases count
    CHECK(mock_rules::detect_target("Group B are heroes", roster) == 1);
    CHECK(mock_rules::detect_target("Group A are traitors", roster) == 0);
    CHECK(mock_rules::detect_target("some group said so", roster) == -1);
}

TEST_CASE("derived keywords for labels outside the lexicon") {
    const auto kws = mock_rules::keywords_for_label("Hillary Clinton", {});
    CHECK(std::find(kws.begin(), kws.end(), "hillary clinton") != kws.end());
    CHECK(std::find(kws.begin(), kws.end(), "hillary") != kws.end());
    CHECK(std::find(kws.begin(), kws.end(), "clinton") != kws.end());
}

TEST_CASE("mock veteran reads hashtags and slang") {
    MockBackend backend;
    const auto reply = json::parse(call(
        backend, AgentRole::SocialMediaVeteran,
        "<comment>\n#SlavaUkraini \xF0\x9F\x87\xBA\xF0\x9F\x87\xA6\n</comment>"));
    const auto notes = reply.at("notes").get<std::string>();
    CHECK(notes.find("#SlavaUkraini") != std::string::npos);
    CHECK(notes.find("pro-Ukraine") != std::string::npos);

    const auto slang = json::parse(
        call(backend, AgentRole::SocialMediaVeteran, "<comment>\nratio + L\n</comment>"));
    const auto slang_notes = slang.at("notes").get<std::string>();
    CHECK(slang_notes.find("ratio") != std::string::npos);
    CHECK(slang_notes.find("'L'") != std::string::npos);

    const auto plain = json::parse(call(backend, AgentRole::SocialMediaVeteran,
                                        "<comment>\nJust a plain sentence.\n</comment>"));
    CHECK(plain.at("notes").get<std::string>() == "no platform-specific constructs detected");
}

TEST_CASE("mock linguist labels form, person, tense and sarcasm cues") {
    MockBackend backend;
    const auto reply = json::parse(
        call(backend, AgentRole::LinguisticExpert, "<comment>\nI support X.\n</comment>"));
    const auto notes = reply.at("notes").get<std::string>();
    CHECK(notes.find("declarative") != std::string::npos);
    CHECK(notes.find("first person") != std::string::npos);
    CHECK(notes.find("present tense") != std::string::npos);

    const auto sarcastic = json::parse(
        call(backend, AgentRole::LinguisticExpert,
             "<comment>\nOh sure, ANOTHER brilliant move.\n</comment>"));
    const auto sarcasm_notes = sarcastic.at("notes").get<std::string>();
    CHECK(sarcasm_notes.find("sarcasm cues") != std::string::npos);
    CHECK(sarcasm_notes.find("oh sure") != std::string::npos);
    CHECK(sarcasm_notes.find("ANOTHER") != std::string::npos);
}

TEST_CASE("mock sentiment expert emits score and target") {
    MockBackend backend;
    const std::string roster_block = "<subgroups>\n0: Group A -- members of A\n"
                                     "1: Group B -- members of B\n</subgroups>\n";
    const auto favorable = json::parse(
        call(backend, AgentRole::SentimentExpert,
             roster_block + "<comment>\nGroup A are heroes\n</comment>"));
    CHECK(favorable.at("sentiment").get<double>() == lexicon_score("heroes"));
    CHECK(favorable.at("target").get<std::string>() == "Group A");

    const auto neutral = json::parse(call(backend, AgentRole::SentimentExpert,
                                          roster_block + "<comment>\nI had lunch\n</comment>"));
    CHECK(neutral.at("sentiment").get<double>() == 0.0);
    CHECK(neutral.at("target").is_null());
}

TEST_CASE("mock explorer assigns by praise, opposition or uncertainty") {
    MockBackend backend;
    const std::string roster_block = "<subgroups>\n0: Pro-Ukraine -- u\n1: Pro-Russia -- r\n"
                                     "</subgroups>\n";
    const auto praising = json::parse(
        call(backend, AgentRole::SubgroupExplorer,
             roster_block + "<comment>\nUkrainians are heroes\n</comment>"));
    CHECK(praising.at("assignment").get<std::string>() == "Pro-Ukraine");

    // hostility toward one side of a two-group roster implies the other side
    const auto opposing = json::parse(
        call(backend, AgentRole::SubgroupExplorer,
             roster_block + "<comment>\nRussia is run by liars\n</comment>"));
    CHECK(opposing.at("assignment").get<std::string>() == "Pro-Ukraine");

    const auto unclear = json::parse(
        call(backend, AgentRole::SubgroupExplorer,
             roster_block + "<comment>\nthe weather is nice\n</comment>"));
    CHECK(unclear.at("assignment").get<std::string>() == "uncertain");
}

TEST_CASE("mock assessor echoes the structured fields") {
    MockBackend backend;
    const auto reply = json::parse(call(backend, AgentRole::PolarizationAssessor,
                                        "<sentiment_score>\n-0.8\n</sentiment_score>\n"
                                        "<sentiment_target>\nGroup A\n</sentiment_target>\n"
                                        "<author_assignment>\nGroup B\n</author_assignment>"));
    CHECK(reply.at("score").get<double>() == -0.8);
    CHECK(reply.at("target").get<std::string>() == "Group A");
    CHECK(reply.at("stance").get<std::string>() == "Group B");

    const auto unresolved = json::parse(call(backend, AgentRole::PolarizationAssessor,
                                             "<sentiment_score>\n0.5\n</sentiment_score>\n"
                                             "<sentiment_target>\nnone\n</sentiment_target>\n"
                                             "<author_assignment>\nunresolved\n</author_assignment>"));
    CHECK(unresolved.at("target").is_null());
    CHECK(unresolved.at("stance").is_null());
}

TEST_CASE("extract_tag pulls trimmed tag bodies") {
    CHECK(extract_tag("x<comment>\n hello \n</comment>y", "comment") == "hello");
    CHECK(extract_tag("no tags here", "comment") == "");
    CHECK(extract_tag("<a>1</a><b>2</b>", "b") == "2");
}

TEST_CASE("render_template substitutes known keys and keeps JSON braces") {
    const std::string tmpl = "Hi {name}, reply {\"x\": 1} and {unknown}";
    const auto rendered = render_template(tmpl, {{"name", "bob"}});
    CHECK(rendered == "Hi bob, reply {\"x\": 1} and {unknown}");
}

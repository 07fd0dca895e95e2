#include "polar/core/comments_io.hpp"
#include "polar/core/errors.hpp"
#include "polar/core/score.hpp"
#include "polar/core/slicing.hpp"
#include "polar/core/time.hpp"
#include "polar/core/types.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

using namespace polar;
using namespace polar::core;

namespace {

Comment make_comment(std::string id, std::int64_t ts_ms, std::string text = "text") {
    Comment c;
    c.id = std::move(id);
    c.text = std::move(text);
    c.author = "a";
    c.likes = 0;
    c.timestamp = Instant{ts_ms};
    c.topic = "t";
    return c;
}

} // namespace

TEST_CASE("clamp_score basic values") {
    CHECK(clamp_score(0.0) == 0.0);
    CHECK(clamp_score(3.7) == 1.0);
    CHECK(clamp_score(-0.42) == -0.42);
    CHECK(clamp_score(-5.0) == -1.0);
    CHECK(clamp_score(1.0) == 1.0);
    CHECK(clamp_score(-1.0) == -1.0);
}

TEST_CASE("clamp_score rejects non-finite input") {
    CHECK_THROWS_AS(clamp_score(std::numeric_limits<double>::quiet_NaN()), InvalidScore);
    CHECK_THROWS_AS(clamp_score(std::numeric_limits<double>::infinity()), InvalidScore);
    CHECK_THROWS_AS(clamp_score(-std::numeric_limits<double>::infinity()), InvalidScore);
}

TEST_CASE("clamp_score is idempotent over random finite inputs") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> dist(-1e6, 1e6);
    for (int i = 0; i < 2000; ++i) {
        const double x = dist(gen);
        const double once = clamp_score(x);
        CHECK(clamp_score(once) == once);
        CHECK(std::signbit(once) == std::signbit(x));
    }
}

TEST_CASE("slice_by_time hand partitions") {
    // floor(t/60s) oracle: 0s,30s -> window 0; 90s -> window 1
    const std::vector<Comment> comments = {make_comment("a", 0), make_comment("b", 30'000),
                                           make_comment("c", 90'000)};
    const auto slices = slice_by_time(comments, Duration{60'000});
    REQUIRE(slices.size() == 2);
    CHECK(slices[0].start.ms == 0);
    CHECK(slices[0].end.ms == 60'000);
    REQUIRE(slices[0].comments.size() == 2);
    CHECK(slices[0].comments[0].id == "a");
    CHECK(slices[0].comments[1].id == "b");
    REQUIRE(slices[1].comments.size() == 1);
    CHECK(slices[1].comments[0].id == "c");
}

TEST_CASE("slice_by_time singleton corpus") {
    const auto slices = slice_by_time({make_comment("only", 1'000'000)}, Duration{3'600'000});
    REQUIRE(slices.size() == 1);
    CHECK(slices[0].comments.size() == 1);
}

TEST_CASE("slice_by_time boundary comment goes to the later half-open window") {
    const std::vector<Comment> comments = {make_comment("a", 0), make_comment("b", 60'000)};
    const auto slices = slice_by_time(comments, Duration{60'000});
    REQUIRE(slices.size() == 2);
    CHECK(slices[0].comments.size() == 1);
    CHECK(slices[1].comments.size() == 1);
    CHECK(slices[1].start.ms == 60'000);
    CHECK(slices[1].end.ms == 120'000);
}

TEST_CASE("slice_by_time emits empty middle windows") {
    const std::vector<Comment> comments = {make_comment("a", 0), make_comment("b", 150'000)};
    const auto slices = slice_by_time(comments, Duration{60'000});
    REQUIRE(slices.size() == 3);
    CHECK(slices[0].comments.size() == 1);
    CHECK(slices[1].comments.empty());
    CHECK(slices[2].comments.size() == 1);
}

TEST_CASE("slice_by_time errors") {
    CHECK_THROWS_AS(slice_by_time({}, Duration{60'000}), EmptyCorpus);
    CHECK_THROWS_AS(slice_by_time({make_comment("a", 0)}, Duration{0}), InvalidWindow);
    CHECK_THROWS_AS(slice_by_time({make_comment("a", 0)}, Duration{-5}), InvalidWindow);
}

TEST_CASE("slice partition property over random corpora") {
    std::mt19937_64 gen(99);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + gen() % 40;
        std::vector<Comment> comments;
        for (std::size_t i = 0; i < n; ++i)
            comments.push_back(make_comment("c" + std::to_string(i),
                                            static_cast<std::int64_t>(gen() % 1'000'000)));
        const Duration window{static_cast<std::int64_t>(1 + gen() % 100'000)};
        const auto slices = slice_by_time(comments, window);

        // multiset union of slice contents == input multiset
        std::vector<std::string> in_ids, out_ids;
        for (const auto& c : comments) in_ids.push_back(c.id);
        for (const auto& s : slices) {
            for (const auto& c : s.comments) {
                out_ids.push_back(c.id);
                CHECK(c.timestamp.ms >= s.start.ms);
                CHECK(c.timestamp.ms < s.end.ms);
            }
        }
        std::sort(in_ids.begin(), in_ids.end());
        std::sort(out_ids.begin(), out_ids.end());
        CHECK(in_ids == out_ids);

        // slices are consecutive, disjoint, ordered
        for (std::size_t k = 1; k < slices.size(); ++k) {
            CHECK(slices[k].start.ms == slices[k - 1].end.ms);
            CHECK(slices[k].start.ms < slices[k].end.ms);
        }
    }
}

TEST_CASE("rfc3339 parsing and formatting") {
    CHECK(parse_rfc3339("1970-01-01T00:00:00Z").ms == 0);
    CHECK(parse_rfc3339("2022-03-01T12:00:00Z").ms == 1646136000000LL);
    CHECK(parse_rfc3339("2022-03-01T12:00:00.250Z").ms == 1646136000250LL);
    // offsets normalize to UTC
    CHECK(parse_rfc3339("2022-03-01T14:00:00+02:00") == parse_rfc3339("2022-03-01T12:00:00Z"));
    CHECK(parse_rfc3339("2022-03-01T10:30:00-01:30") == parse_rfc3339("2022-03-01T12:00:00Z"));
    // lowercase designators and space separator are accepted
    CHECK(parse_rfc3339("2022-03-01 12:00:00z") == parse_rfc3339("2022-03-01T12:00:00Z"));

    CHECK(format_rfc3339(Instant{1646136000000LL}) == "2022-03-01T12:00:00Z");
    CHECK(format_rfc3339(Instant{1646136000250LL}) == "2022-03-01T12:00:00.250Z");
    CHECK(format_rfc3339(Instant{-1000}) == "1969-12-31T23:59:59Z");
}

TEST_CASE("rfc3339 round trip") {
    std::mt19937_64 gen(3);
    for (int i = 0; i < 500; ++i) {
        const auto ms = static_cast<std::int64_t>(gen() % 4'000'000'000'000LL) - 1'000'000'000'000LL;
        const Instant t{ms};
        CHECK(parse_rfc3339(format_rfc3339(t)) == t);
    }
}

TEST_CASE("rfc3339 rejects malformed input") {
    for (const auto* bad :
         {"", "2022-03-01", "2022-03-01T12:00:00", "2022-13-01T00:00:00Z", "2022-02-30T00:00:00Z",
          "2022-03-01T25:00:00Z", "not a date", "2022-03-01T12:00:00Zjunk",
          "2022-03-01T12:00:00+2:00"}) {
        CHECK_THROWS_AS(parse_rfc3339(bad), FormatError);
    }
}

TEST_CASE("duration parsing") {
    CHECK(parse_duration("90s").ms == 90'000);
    CHECK(parse_duration("15m").ms == 900'000);
    CHECK(parse_duration("2h").ms == 7'200'000);
    CHECK(parse_duration("7d").ms == 604'800'000);
    CHECK(parse_duration("500ms").ms == 500);
    CHECK(parse_duration("60").ms == 60'000); // bare integer = seconds
    CHECK_THROWS_AS(parse_duration(""), InvalidWindow);
    CHECK_THROWS_AS(parse_duration("h"), InvalidWindow);
    CHECK_THROWS_AS(parse_duration("5weeks"), InvalidWindow);
    CHECK_THROWS_AS(parse_duration("0s"), InvalidWindow);
    CHECK(format_duration(Duration{3'600'000}) == "1h");
    CHECK(format_duration(Duration{90'000}) == "90s");
}

TEST_CASE("comments jsonl ingestion") {
    const std::string good =
        R"({"id":"c1","text":"hello world","author":"a1","likes":3,"timestamp":"2022-03-01T12:00:00Z","topic":"t","extra":"ignored"})"
        "\n"
        R"({"id":"c2","text":"second","author":"a2","likes":0,"timestamp":"2022-03-01T12:01:00Z","topic":"t"})"
        "\n";
    std::istringstream in(good);
    const auto result = read_comments_jsonl(in, true);
    REQUIRE(result.comments.size() == 2);
    CHECK(result.comments[0].id == "c1");
    CHECK(result.comments[0].likes == 3);
    CHECK(result.comments[0].timestamp.ms == 1646136000000LL);
    CHECK(result.issues.empty());
}

TEST_CASE("comments jsonl malformed lines: strict vs lenient") {
    const std::string mixed =
        R"({"id":"c1","text":"ok","author":"a","likes":1,"timestamp":"2022-03-01T12:00:00Z","topic":"t"})"
        "\nnot json at all\n"
        R"({"id":"c3","text":"   ","author":"a","likes":1,"timestamp":"2022-03-01T12:00:00Z","topic":"t"})"
        "\n"
        R"({"id":"c4","text":"ok2","author":"a","likes":-1,"timestamp":"2022-03-01T12:00:00Z","topic":"t"})"
        "\n"
        R"({"id":"c5","text":"ok3","author":"a","likes":1,"timestamp":"2022-03-01T12:00:00Z","topic":"t"})"
        "\n";

    std::istringstream lenient(mixed);
    const auto result = read_comments_jsonl(lenient, false);
    REQUIRE(result.comments.size() == 2); // c1 and c5 survive
    REQUIRE(result.issues.size() == 3);
    CHECK(result.issues[0].line == 2); // issues carry 1-based line numbers
    CHECK(result.issues[1].line == 3);
    CHECK(result.issues[2].line == 4);

    std::istringstream strict(mixed);
    CHECK_THROWS_WITH_AS(read_comments_jsonl(strict, true), doctest::Contains("line 2"),
                         FormatError);
}

TEST_CASE("comments jsonl round trip") {
    std::vector<Comment> comments = {make_comment("x", 1646136000000LL, "some text")};
    comments[0].likes = 7;
    std::ostringstream out;
    write_comments_jsonl(out, comments);
    std::istringstream in(out.str());
    const auto result = read_comments_jsonl(in, true);
    REQUIRE(result.comments.size() == 1);
    CHECK(result.comments[0].id == comments[0].id);
    CHECK(result.comments[0].text == comments[0].text);
    CHECK(result.comments[0].likes == comments[0].likes);
    CHECK(result.comments[0].timestamp == comments[0].timestamp);
}

TEST_CASE("csn validator accepts a consistent network and rejects broken ones") {
    Csn csn;
    csn.subgroups = {{0, "A", ""}, {1, "B", ""}};
    csn.cells.assign(4, std::nullopt);
    csn.cell(0, 1) = Csn::EdgeData{-0.5, 2.0, 1};
    csn.comment_count = {1, 0};
    csn.total_comments = 1;
    CHECK_NOTHROW(validate_csn(csn));

    auto broken = csn;
    broken.total_comments = 5;
    CHECK_THROWS_AS(validate_csn(broken), Error);

    broken = csn;
    broken.cell(0, 1)->score = 1.5;
    CHECK_THROWS_AS(validate_csn(broken), Error);

    broken = csn;
    broken.cells.resize(3);
    CHECK_THROWS_AS(validate_csn(broken), Error);

    broken = csn;
    broken.cell(0, 1)->weight_sum = 0.5; // below count: likes floor violated
    CHECK_THROWS_AS(validate_csn(broken), Error);
}

#pragma once

#include "polar/core/time.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace polar::core {

// One social-media post. Immutable after ingestion; empty-after-trim text is
// rejected by the JSONL reader, so downstream code may assume non-empty text.
struct Comment {
    std::string id;
    std::string text;
    std::string author;
    std::int64_t likes = 0; // >= 0
    Instant timestamp;
    std::string topic;
};

// One opinion subgroup discovered (or predefined) for an analysis run.
// `index` is the subgroup's position in the roster and is what triplets and
// CSN matrices refer to.
struct Subgroup {
    int index = 0;
    std::string label;
    std::string description; // speaking-pattern summary
};

constexpr double kScoreMin = -1.0;
constexpr double kScoreMax = 1.0;

// Per-comment analysis result: who speaks (stance, may be unresolved),
// how they feel (score in [-1,+1]) and about whom (target, never unresolved —
// comments without a discernible target are skipped before this point).
struct Triplet {
    std::optional<int> stance; // subgroup index; nullopt = incomplete, imputed later
    double score = 0.0;
    int target = 0; // subgroup index
    std::int64_t likes = 0;
    std::string comment_id;
};

// Half-open window [start, end) of comments, in input order.
struct TimeSlice {
    Instant start;
    Instant end;
    std::vector<Comment> comments;
};

// Directed weighted sentiment graph over subgroups. adjacency[i*n+j] is the
// likes-weighted mean sentiment of subgroup i toward subgroup j, absent when
// the pair was never observed (absence is not a 0.0 edge). Self-loops (i==i)
// are legal and encode in-group sentiment.
struct Csn {
    struct EdgeData {
        double score = 0.0;      // mean sentiment in [-1, +1]
        double weight_sum = 0.0; // sum of max(likes, 1) over contributing triplets
        std::int64_t count = 0;  // number of contributing triplets
    };

    std::vector<Subgroup> subgroups;
    std::vector<std::optional<EdgeData>> cells; // row-major n x n
    std::vector<std::int64_t> comment_count;    // n_i, per subgroup
    std::int64_t total_comments = 0;            // N
    std::uint64_t seed = 0;                     // imputation seed used at build time

    std::size_t size() const { return subgroups.size(); }

    const std::optional<EdgeData>& cell(std::size_t i, std::size_t j) const {
        return cells[i * size() + j];
    }
    std::optional<EdgeData>& cell(std::size_t i, std::size_t j) {
        return cells[i * size() + j];
    }

    std::optional<double> edge(std::size_t i, std::size_t j) const {
        const auto& c = cell(i, j);
        if (!c) return std::nullopt;
        return c->score;
    }
};

// Throws if any Csn type invariant is violated (square matrix, scores in
// range, comment counts consistent). Builder tests run this on every output.
void validate_csn(const Csn& csn);

} // namespace polar::core

#pragma once

// Independent brute-force oracle for the CSN construction: a straight
// two-phase transcription over plain nested vectors, with its own replay of
// the documented imputation stream (std::mt19937_64, unit doubles via
// (x >> 11) * 2^-53, inverse-CDF over the probability vector in index order,
// one draw per incomplete triplet, last positive-probability index as the
// rounding fallback). Deliberately shares no code with the library.

#include "polar/core/types.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace testsupport {

struct ReplayRng {
    std::mt19937_64 gen;
    explicit ReplayRng(std::uint64_t seed) : gen(seed) {}
    double unit() { return static_cast<double>(gen() >> 11) * std::ldexp(1.0, -53); }
};

struct OracleCell {
    bool present = false;
    double score = 0.0;
    double weight = 0.0;
    long long count = 0;
};

struct OracleCsn {
    std::vector<std::vector<OracleCell>> cells;
    std::vector<long long> comment_count;
    long long total = 0;
};

inline OracleCsn oracle_build_csn(const std::vector<polar::core::Triplet>& triplets,
                                  std::size_t n, std::uint64_t seed) {
    std::vector<std::vector<double>> score_sum(n, std::vector<double>(n, 0.0));
    std::vector<std::vector<double>> weight(n, std::vector<double>(n, 0.0));
    std::vector<std::vector<long long>> count(n, std::vector<long long>(n, 0));
    std::vector<long long> per_group(n, 0);

    const auto add = [&](std::size_t src, std::size_t tgt, const polar::core::Triplet& t) {
        const double w = t.likes > 0 ? static_cast<double>(t.likes) : 1.0;
        score_sum[src][tgt] += t.score * w;
        weight[src][tgt] += w;
        count[src][tgt] += 1;
        per_group[src] += 1;
    };

    std::vector<const polar::core::Triplet*> incomplete;
    for (const auto& t : triplets) {
        if (t.stance)
            add(static_cast<std::size_t>(*t.stance), static_cast<std::size_t>(t.target), t);
        else
            incomplete.push_back(&t);
    }

    ReplayRng rng(seed);
    for (const auto* t : incomplete) {
        const auto tgt = static_cast<std::size_t>(t->target);
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) total += static_cast<double>(count[i][tgt]);
        std::vector<double> weights(n);
        if (total == 0.0) {
            for (std::size_t i = 0; i < n; ++i) weights[i] = 1.0;
            total = static_cast<double>(n);
        } else {
            for (std::size_t i = 0; i < n; ++i) weights[i] = static_cast<double>(count[i][tgt]);
        }
        const double u = rng.unit();
        double cum = 0.0;
        std::size_t chosen = n;
        std::size_t last_positive = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (weights[i] <= 0.0) continue;
            last_positive = i;
            cum += weights[i] / total;
            if (u < cum) {
                chosen = i;
                break;
            }
        }
        if (chosen == n) chosen = last_positive;
        add(chosen, tgt, *t);
    }

    OracleCsn result;
    result.cells.assign(n, std::vector<OracleCell>(n));
    result.comment_count = per_group;
    for (auto c : per_group) result.total += c;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (weight[i][j] > 0.0) {
                result.cells[i][j].present = true;
                result.cells[i][j].score = score_sum[i][j] / weight[i][j];
                result.cells[i][j].weight = weight[i][j];
                result.cells[i][j].count = count[i][j];
            }
        }
    }
    return result;
}

// random triplet instances for the oracle-equivalence and property suites
struct InstanceOptions {
    std::size_t max_subgroups = 5;
    std::size_t max_triplets = 50;
    std::int64_t max_likes = 10;
    double incomplete_fraction = 0.25; // at least this share of null stances
};

struct RandomInstance {
    std::vector<polar::core::Subgroup> subgroups;
    std::vector<polar::core::Triplet> triplets;
};

inline RandomInstance random_instance(std::mt19937_64& gen, const InstanceOptions& opts = {}) {
    RandomInstance inst;
    const std::size_t n = 1 + gen() % opts.max_subgroups;
    for (std::size_t i = 0; i < n; ++i)
        inst.subgroups.push_back({static_cast<int>(i), "G" + std::to_string(i), ""});

    const std::size_t m = 1 + gen() % opts.max_triplets;
    std::uniform_real_distribution<double> score_dist(-1.0, 1.0);
    const auto forced_incomplete =
        static_cast<std::size_t>(std::ceil(static_cast<double>(m) * opts.incomplete_fraction));
    for (std::size_t k = 0; k < m; ++k) {
        polar::core::Triplet t;
        t.comment_id = "t" + std::to_string(k);
        t.target = static_cast<int>(gen() % n);
        t.score = score_dist(gen);
        t.likes = static_cast<std::int64_t>(gen() % (opts.max_likes + 1));
        const bool incomplete = k < forced_incomplete ? true : (gen() % 4 == 0);
        if (!incomplete) t.stance = static_cast<int>(gen() % n);
        inst.triplets.push_back(std::move(t));
    }
    return inst;
}

} // namespace testsupport

#pragma once

#include "polar/agents/types.hpp"

#include <array>
#include <cstdint>

namespace polar::eval {

// Per-class true positives / false positives / false negatives over
// {Favor, Against, None}.
struct ClassCounts {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;
};

struct ConfusionCounts {
    std::array<ClassCounts, 3> classes; // indexed by StanceLabel

    ClassCounts& of(agents::StanceLabel s) { return classes[static_cast<std::size_t>(s)]; }
    const ClassCounts& of(agents::StanceLabel s) const {
        return classes[static_cast<std::size_t>(s)];
    }
    void add(agents::StanceLabel gold, agents::StanceLabel predicted);
    std::int64_t gold_total() const; // sum of per-class tp + fn
};

// Maps an assessor score to a stance label: score > tau is Favor,
// score < -tau is Against, the dead zone in between is None. Inequalities are
// strict; requires 0 <= tau < 1.
agents::StanceLabel map_score_to_stance(double score, double tau);

// Binary variant for datasets without a None class: the sign decides, with
// score >= 0 counting as Favor.
agents::StanceLabel map_score_to_stance_binary(double score);

// F1 = 2PR/(P+R) with P = tp/(tp+fp), R = tp/(tp+fn), taken as 0 whenever a
// denominator (tp+fp, tp+fn or P+R) vanishes. Computed as the algebraically
// identical 2tp/(2tp+fp+fn), a single correctly rounded division of exact
// integers.
double f1(std::int64_t tp, std::int64_t fp, std::int64_t fn);

// Mean of the Favor and Against F1 scores. The None class is ignored in the
// average but its predictions still feed the other classes' fp counts.
double f_avg(const ConfusionCounts& confusion);

// Unweighted mean of all three per-class F1 scores.
double macro_f1(const ConfusionCounts& confusion);

} // namespace polar::eval

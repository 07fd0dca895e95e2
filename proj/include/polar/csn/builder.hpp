#pragma once

#include "polar/core/rng.hpp"
#include "polar/core/types.hpp"

#include <cstdint>
#include <vector>

namespace polar::csn {

// Accumulator for one CSN build. Matrices are row-major n x n over the
// subgroup roster; weight_sum[i][j] >= count[i][j] always holds because each
// triplet contributes max(likes, 1) >= 1 weight.
struct BuilderState {
    std::size_t n = 0;
    std::vector<double> adj;                  // weighted-score sums, then averages
    std::vector<double> weight_sum;
    std::vector<std::int64_t> count;          // triplets per (stance, target) pair
    std::vector<std::int64_t> comment_count;  // per stance subgroup
    std::vector<core::Triplet> incomplete;    // null-stance triplets awaiting imputation

    explicit BuilderState(std::size_t subgroup_count)
        : n(subgroup_count),
          adj(subgroup_count * subgroup_count, 0.0),
          weight_sum(subgroup_count * subgroup_count, 0.0),
          count(subgroup_count * subgroup_count, 0),
          comment_count(subgroup_count, 0) {}

    std::size_t at(std::size_t i, std::size_t j) const { return i * n + j; }
};

namespace detail {

// Phase 1 step: a complete triplet updates the matrices, an incomplete one is
// queued for phase 2. Throws IndexError when stance/target fall outside the
// roster (subgroup roster drift).
void accumulate(BuilderState& state, const core::Triplet& triplet);

// Phase 2: resolves queued triplets in input order. Each stance is sampled
// from the observed stance frequencies toward that triplet's target
// (count[i][tgt] weights); when nothing was ever observed toward the target
// the draw is uniform over the full roster. Imputed triplets update the count
// and weight matrices like complete ones, so earlier imputations influence
// later draws; with a fixed seed the whole sequence replays.
void impute_incomplete(BuilderState& state, core::SeededRng& rng);

// Phase 3: divides accumulated scores by weight sums. Pairs with zero weight
// get no edge (absence, not a 0.0 edge).
core::Csn finalize_averages(const BuilderState& state, std::vector<core::Subgroup> subgroups,
                            std::uint64_t seed);

} // namespace detail

// Runs the three phases in order. The phases are not exposed individually so
// imputation can never run before all complete triplets are accumulated.
// Deterministic for a given seed; the imputation stream is SeededRng(seed).
core::Csn build_csn(const std::vector<core::Triplet>& triplets,
                    std::vector<core::Subgroup> subgroups, std::uint64_t seed);

// t_i: the subgroup's positive self-directed sentiment. max(0, e_ii) when the
// self-loop exists; `default_when_missing` (1.0 unless configured otherwise)
// when no self-directed sentiment was observed. The raw e_ii stays in the CSN
// either way.
double internal_cohesion(const core::Csn& csn, std::size_t i, double default_when_missing = 1.0);

} // namespace polar::csn

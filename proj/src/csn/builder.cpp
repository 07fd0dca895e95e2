#include "polar/csn/builder.hpp"

#include "polar/core/errors.hpp"

#include <algorithm>
#include <string>

namespace polar::csn {

namespace {

std::int64_t likes_weight(const core::Triplet& t) { return std::max<std::int64_t>(t.likes, 1); }

void apply(BuilderState& state, std::size_t src, std::size_t tgt, const core::Triplet& t) {
    const double w = static_cast<double>(likes_weight(t));
    const std::size_t cell = state.at(src, tgt);
    state.adj[cell] += t.score * w;
    state.weight_sum[cell] += w;
    state.count[cell] += 1;
    state.comment_count[src] += 1;
}

void check_index(int idx, std::size_t n, const char* what, const std::string& comment_id) {
    if (idx < 0 || static_cast<std::size_t>(idx) >= n)
        throw IndexError(std::string(what) + " index " + std::to_string(idx) +
                         " outside subgroup roster of size " + std::to_string(n) +
                         " (comment " + comment_id + ")");
}

} // namespace

namespace detail {

void accumulate(BuilderState& state, const core::Triplet& triplet) {
    check_index(triplet.target, state.n, "target", triplet.comment_id);
    if (!triplet.stance) {
        state.incomplete.push_back(triplet);
        return;
    }
    check_index(*triplet.stance, state.n, "stance", triplet.comment_id);
    apply(state, static_cast<std::size_t>(*triplet.stance),
          static_cast<std::size_t>(triplet.target), triplet);
}

void impute_incomplete(BuilderState& state, core::SeededRng& rng) {
    std::vector<double> weights(state.n);
    for (const auto& triplet : state.incomplete) {
        const auto tgt = static_cast<std::size_t>(triplet.target);
        double total = 0.0;
        for (std::size_t i = 0; i < state.n; ++i) {
            weights[i] = static_cast<double>(state.count[state.at(i, tgt)]);
            total += weights[i];
        }
        if (total == 0.0) {
            // nothing observed toward this target: maximum-entropy fallback
            std::fill(weights.begin(), weights.end(), 1.0);
        }
        const std::size_t src = rng.sample_categorical(weights);
        apply(state, src, tgt, triplet);
    }
}

core::Csn finalize_averages(const BuilderState& state, std::vector<core::Subgroup> subgroups,
                            std::uint64_t seed) {
    core::Csn csn;
    csn.subgroups = std::move(subgroups);
    csn.cells.assign(state.n * state.n, std::nullopt);
    csn.comment_count = state.comment_count;
    csn.seed = seed;
    csn.total_comments = 0;
    for (auto c : state.comment_count) csn.total_comments += c;

    for (std::size_t i = 0; i < state.n; ++i) {
        for (std::size_t j = 0; j < state.n; ++j) {
            const std::size_t cell = state.at(i, j);
            if (state.weight_sum[cell] > 0.0) {
                core::Csn::EdgeData e;
                e.score = std::clamp(state.adj[cell] / state.weight_sum[cell], core::kScoreMin,
                                     core::kScoreMax);
                e.weight_sum = state.weight_sum[cell];
                e.count = state.count[cell];
                csn.cell(i, j) = e;
            }
        }
    }
    return csn;
}

} // namespace detail

core::Csn build_csn(const std::vector<core::Triplet>& triplets,
                    std::vector<core::Subgroup> subgroups, std::uint64_t seed) {
    BuilderState state(subgroups.size());
    for (const auto& t : triplets) detail::accumulate(state, t);

    core::SeededRng rng(seed);
    detail::impute_incomplete(state, rng);

    auto csn = detail::finalize_averages(state, std::move(subgroups), seed);
    core::validate_csn(csn);
    return csn;
}

double internal_cohesion(const core::Csn& csn, std::size_t i, double default_when_missing) {
    if (i >= csn.size())
        throw IndexError("subgroup index " + std::to_string(i) + " out of range");
    const auto e = csn.edge(i, i);
    if (!e) return default_when_missing;
    return std::max(0.0, *e); // hostile-to-itself contributes no cohesion
}

} // namespace polar::csn

#include "polar/coi/series.hpp"

#include "polar/core/errors.hpp"
#include "polar/core/rng.hpp"
#include "polar/csn/builder.hpp"

namespace polar::coi {

std::vector<SliceOutcome> coi_series(const std::vector<core::TimeSlice>& slices,
                                     const agents::PipelineConfig& cfg,
                                     agents::ChatBackend& backend, const CoiOptions& opts) {
    std::vector<SliceOutcome> outcomes;
    outcomes.reserve(slices.size());

    for (std::size_t k = 0; k < slices.size(); ++k) {
        const auto& slice = slices[k];
        SliceOutcome outcome;
        outcome.start = slice.start;
        outcome.end = slice.end;
        if (slice.comments.empty()) {
            outcomes.push_back(std::move(outcome)); // no comments, no snapshot
            continue;
        }
        try {
            auto slice_cfg = cfg;
            slice_cfg.seed = core::derive_seed(cfg.seed, "slice", k);
            if (!slice_cfg.review_file.empty())
                slice_cfg.review_file += ".slice" + std::to_string(k);
            slice_cfg.checkpoint_file.clear();

            const auto result = agents::run_triplet_pipeline(slice.comments, slice_cfg, backend);
            const auto csn = csn::build_csn(result.triplets, result.background.subgroups,
                                            core::derive_seed(slice_cfg.seed, "imputation"));
            auto report = coi(csn, opts);
            report.slice_start = slice.start;
            report.slice_end = slice.end;
            outcome.report = std::move(report);
        } catch (const Error& e) {
            outcome.error_code = e.code();
            outcome.error_message = e.what();
        }
        outcomes.push_back(std::move(outcome));
    }
    return outcomes;
}

} // namespace polar::coi

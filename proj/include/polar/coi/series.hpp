#pragma once

#include "polar/agents/pipeline.hpp"
#include "polar/coi/coi.hpp"
#include "polar/core/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polar::coi {

struct SliceOutcome {
    core::Instant start;
    core::Instant end;
    std::optional<CoiReport> report; // empty for an empty slice or a failed one
    std::string error_code;          // set when the slice failed
    std::string error_message;
};

// One polarization snapshot per slice: each non-empty slice gets a fresh
// background, roster and CSN, built with seeds derived from the run seed and
// the slice index so slices stay independent and reproducible. A failing
// slice is reported in place without aborting the others.
std::vector<SliceOutcome> coi_series(const std::vector<core::TimeSlice>& slices,
                                     const agents::PipelineConfig& cfg,
                                     agents::ChatBackend& backend, const CoiOptions& opts = {});

} // namespace polar::coi

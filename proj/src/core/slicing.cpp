#include "polar/core/slicing.hpp"

#include "polar/core/errors.hpp"

#include <algorithm>

namespace polar::core {

std::vector<TimeSlice> slice_by_time(const std::vector<Comment>& comments, Duration window) {
    if (comments.empty()) throw EmptyCorpus("cannot slice an empty comment list");
    if (window.ms <= 0) throw InvalidWindow("slice window must be positive");

    std::int64_t min_ts = comments.front().timestamp.ms;
    std::int64_t max_ts = min_ts;
    for (const auto& c : comments) {
        min_ts = std::min(min_ts, c.timestamp.ms);
        max_ts = std::max(max_ts, c.timestamp.ms);
    }

    const std::int64_t w = window.ms;
    const std::size_t slice_count = static_cast<std::size_t>((max_ts - min_ts) / w) + 1;

    std::vector<TimeSlice> slices(slice_count);
    for (std::size_t k = 0; k < slice_count; ++k) {
        slices[k].start = Instant{min_ts + static_cast<std::int64_t>(k) * w};
        slices[k].end = Instant{min_ts + static_cast<std::int64_t>(k + 1) * w};
    }
    for (const auto& c : comments) {
        const auto k = static_cast<std::size_t>((c.timestamp.ms - min_ts) / w);
        slices[k].comments.push_back(c);
    }
    return slices;
}

} // namespace polar::core

#pragma once

#include "polar/core/types.hpp"

#include <vector>

namespace polar::core {

// Partitions comments into consecutive half-open windows [start, start+w),
// [start+w, start+2w), ... where start is the earliest timestamp. Empty
// windows inside the covered range are emitted with zero comments; every
// comment lands in exactly one slice. Comments keep input order within a
// slice. Throws EmptyCorpus / InvalidWindow.
std::vector<TimeSlice> slice_by_time(const std::vector<Comment>& comments, Duration window);

} // namespace polar::core

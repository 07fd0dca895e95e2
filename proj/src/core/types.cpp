#include "polar/core/types.hpp"

#include "polar/core/errors.hpp"

#include <string>

namespace polar::core {

void validate_csn(const Csn& csn) {
    const std::size_t n = csn.subgroups.size();
    const auto fail = [](const std::string& why) { throw Error("InvalidCsn", why); };

    if (csn.cells.size() != n * n)
        fail("adjacency is not square: " + std::to_string(csn.cells.size()) + " cells for " +
             std::to_string(n) + " subgroups");
    if (csn.comment_count.size() != n) fail("comment_count length != subgroup count");

    for (std::size_t i = 0; i < n; ++i) {
        if (csn.subgroups[i].index != static_cast<int>(i))
            fail("subgroup roster indices must be 0..n-1 in order");
        if (csn.comment_count[i] < 0) fail("negative comment count");
    }

    std::int64_t total = 0;
    for (auto c : csn.comment_count) total += c;
    if (total != csn.total_comments)
        fail("sum(comment_count)=" + std::to_string(total) + " != total_comments=" +
             std::to_string(csn.total_comments));

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const auto& cell = csn.cell(i, j);
            if (!cell) continue;
            if (cell->score < kScoreMin || cell->score > kScoreMax)
                fail("edge " + std::to_string(i) + "->" + std::to_string(j) + " score " +
                     std::to_string(cell->score) + " outside [-1, +1]");
            if (cell->count <= 0) fail("present edge with non-positive triplet count");
            if (cell->weight_sum < static_cast<double>(cell->count))
                fail("weight_sum below count; max(likes,1) floor violated");
        }
    }
}

} // namespace polar::core

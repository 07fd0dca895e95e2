#pragma once

#include "polar/agents/types.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace polar::agents {

// Resolves queued unclassifiable comments. The pipeline calls this whenever
// the uncertain queue reaches the configured threshold (and once more for
// leftovers at the end of the exploration pass).
class ReviewHandler {
public:
    virtual ~ReviewHandler() = default;
    // May set item resolutions and may append new subgroups to the roster.
    virtual void resolve(std::vector<ReviewItem>& items,
                         std::vector<core::Subgroup>& roster) = 0;
};

// Terminal review: prints each queued comment with numbered subgroup choices
// plus "n" (new subgroup) and "s" (skip), reading answers line by line.
// Streams are injected so tests can drive it.
class InteractiveReviewHandler : public ReviewHandler {
public:
    InteractiveReviewHandler(std::istream& in, std::ostream& out, int max_subgroups)
        : in_(in), out_(out), max_subgroups_(max_subgroups) {}

    void resolve(std::vector<ReviewItem>& items, std::vector<core::Subgroup>& roster) override;

private:
    std::istream& in_;
    std::ostream& out_;
    int max_subgroups_;
};

// Review file: JSON Lines with a header object followed by one ReviewItem per
// line. Humans fill in "resolution" (a subgroup index, an existing label, or
// a brand-new label) and feed the file back through apply_resolutions.
void write_review_file(const std::string& path, const std::vector<ReviewItem>& items,
                       const std::vector<core::Subgroup>& roster, const std::string& config_hash);

struct ReviewFile {
    std::string config_hash;
    std::vector<core::Subgroup> roster; // roster snapshot from the header
    std::vector<ReviewItem> items;
};

// Throws ReviewFormatError naming the offending line.
ReviewFile read_review_file(const std::string& path);

// Merges resolved review items into a triplet list: a triplet whose comment
// has a resolution gets its null stance replaced. Resolutions naming a label
// missing from the roster append a new subgroup (respecting max_subgroups).
// Returns the number of upgraded triplets.
std::size_t apply_resolutions(std::vector<core::Triplet>& triplets,
                              const std::vector<ReviewItem>& resolved,
                              std::vector<core::Subgroup>& roster, int max_subgroups);

} // namespace polar::agents

#pragma once

#include "polar/core/types.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace polar::core {

struct IngestIssue {
    std::size_t line = 0; // 1-based
    std::string message;
};

struct IngestResult {
    std::vector<Comment> comments;
    std::vector<IngestIssue> issues; // skipped lines, in order (lenient mode only)
};

// Reads JSON Lines comments: one object per line with fields id, text, author,
// likes, timestamp (RFC 3339), topic. Unknown fields are ignored. Blank lines
// are allowed. In strict mode the first malformed line throws FormatError
// naming the line; otherwise malformed lines are skipped and reported in
// `issues`. Comments whose text is empty after whitespace trimming count as
// malformed.
IngestResult read_comments_jsonl(std::istream& in, bool strict);
IngestResult read_comments_file(const std::string& path, bool strict);

void write_comments_jsonl(std::ostream& out, const std::vector<Comment>& comments);

// Trims ASCII whitespace from both ends.
std::string trim(const std::string& s);

} // namespace polar::core

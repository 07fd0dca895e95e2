#pragma once

#include "polar/agents/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace polar::agents {

// triplets.jsonl: a header object carrying run metadata (config hash, seed,
// subgroup roster, skipped comments) followed by one triplet object per line.
struct TripletsFile {
    std::string config_hash;
    std::uint64_t seed = 0;
    std::vector<core::Subgroup> subgroups;
    std::vector<core::Triplet> triplets;
    std::vector<SkippedComment> skipped;
};

void write_triplets_jsonl(std::ostream& out, const TripletsFile& file);
void write_triplets_file(const std::string& path, const TripletsFile& file);
TripletsFile read_triplets_jsonl(std::istream& in);
TripletsFile read_triplets_file(const std::string& path);

void write_background_json(std::ostream& out, const Background& background,
                           const std::string& config_hash);
Background read_background_json(std::istream& in, std::string* config_hash_out = nullptr);
Background read_background_file(const std::string& path, std::string* config_hash_out = nullptr);

} // namespace polar::agents

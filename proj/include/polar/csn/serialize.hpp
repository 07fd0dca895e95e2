#pragma once

#include "polar/core/types.hpp"

#include <iosfwd>
#include <string>

namespace polar::csn {

// csn.json document. Writing is byte-deterministic: fixed key order, edges in
// (src, tgt) order, floating-point values printed with 17 significant digits
// so scores round-trip bit-exactly. `config_hash` ties the artifact to the
// run configuration that produced it (empty string when standalone).
void write_csn_json(std::ostream& out, const core::Csn& csn, const std::string& config_hash);
std::string csn_to_json(const core::Csn& csn, const std::string& config_hash);

// Parses and validates. `config_hash_out`, when non-null, receives the
// embedded hash ("" if the document has none).
core::Csn read_csn_json(std::istream& in, std::string* config_hash_out = nullptr);
core::Csn read_csn_file(const std::string& path, std::string* config_hash_out = nullptr);

// 17-significant-digit decimal form; strtod() of the result returns the
// original double bit-for-bit.
std::string format_double17(double v);

} // namespace polar::csn

#pragma once

#include "polar/core/types.hpp"

#include <string>

namespace polar::cli {

// Renders the CSN as a Graphviz digraph: one node per subgroup labeled with
// its name and comment count, one edge per present adjacency entry labeled
// with the score to two decimals. Negative edges are drawn red and dashed,
// non-negative ones blue; self-loops render like any other edge. Output is
// deterministic (subgroup-index order) and embeds the config hash as a
// comment line.
std::string export_dot(const core::Csn& csn, const std::string& config_hash);

} // namespace polar::cli

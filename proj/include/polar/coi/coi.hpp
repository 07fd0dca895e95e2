#pragma once

#include "polar/core/types.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace polar::coi {

struct CoiOptions {
    // t_i used when a subgroup has no self-loop edge. Absence of in-group
    // chatter should not erase observed inter-group hostility, hence 1.0.
    double cohesion_default = 1.0;
};

struct SubgroupTerm {
    int subgroup = 0;
    std::string label;
    double share = 0.0;         // n_i / N
    double cohesion = 0.0;      // t_i
    double hostility_sum = 0.0; // sum of hostility terms over outgoing edges (j != i)
    double contribution = 0.0;  // share * cohesion * hostility_sum
};

struct CoiReport {
    double total = 0.0;
    std::vector<SubgroupTerm> per_subgroup;
    std::optional<core::Instant> slice_start;
    std::optional<core::Instant> slice_end;
};

// Hostility contributed by one directed edge: -e when e <= 0, otherwise 0
// (friendly sentiment does not contribute to polarization).
double hostility_term(double e);

// t_i * sum over outgoing edges j != i of hostility_term(e_ij). The self-loop
// enters only through t_i; absent edges contribute nothing.
double subgroup_polarization(const core::Csn& csn, std::size_t i, const CoiOptions& opts = {});

// Community opposition index: sum_i (n_i / N) * subgroup_polarization(i).
// Throws EmptyNetwork when N == 0. The report's total always equals the sum
// of its per-subgroup contributions.
CoiReport coi(const core::Csn& csn, const CoiOptions& opts = {});

void write_report_json(std::ostream& out, const CoiReport& report, const std::string& config_hash);
CoiReport read_report_json(std::istream& in, std::string* config_hash_out = nullptr);

// Fixed-width table: subgroup, share, t_i, hostility, contribution, total.
void print_report_table(std::ostream& out, const CoiReport& report);

} // namespace polar::coi

#pragma once

#include <cstdint>
#include <vector>

#include "zsm/group.hpp"

namespace zsm {

/// Multiplicity vector over a fixed column/element order.
using Mults = std::vector<std::uint32_t>;

struct SearchLimits {
    std::uint64_t max_nodes = 10'000'000;
};

/// Homogeneous system: find x in N_0^m with sum x_i * column_i = 0 in the
/// group. The solution set is a submonoid of N_0^m; we enumerate its finite
/// set of minimal nonzero elements.
struct DiophSystem {
    FgGroup group;
    std::vector<GroupElement> columns;

    DiophSystem(FgGroup g, std::vector<GroupElement> cols);
};

struct MinimalSolutionSet {
    DiophSystem system;
    std::vector<Mults> solutions; // lex-sorted, pairwise incomparable, complete
};

/// Complete set of minimal nonzero solutions, in lexicographic order.
/// Graded breadth-first completion with Dickson dominance pruning and a
/// Contejean-Devie admissibility test on the free coordinates; torsion
/// coordinates recur and are handled by the dominance pruning alone.
/// Throws resource_limit_error when the node budget runs out.
MinimalSolutionSet minimal_solutions(const DiophSystem& sys, const SearchLimits& limits = {});

/// Does target lie in the submonoid generated by gens? Decided by
/// homogenizing with one auxiliary column -target and searching for a
/// minimal solution whose auxiliary coordinate is 1.
bool in_submonoid(const GroupElement& target, const std::vector<GroupElement>& gens,
                  const SearchLimits& limits = {});

} // namespace zsm

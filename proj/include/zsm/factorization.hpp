#pragma once

#include <cstdint>
#include <vector>

#include "zsm/zerosum.hpp"

namespace zsm {

/// A factorization of a zero-sum sequence: how many times each atom is used.
/// Indices refer to the canonical atom order of the AtomSet.
using Factorization = Mults;

/// Sorted, duplicate-free set of factorization lengths. {0} for the empty
/// sequence, nonempty for every zero-sum sequence.
using LengthSet = std::vector<std::uint64_t>;

/// The complete set of factorizations of seq into atoms, in lexicographic
/// count order. The empty sequence yields the single empty factorization.
/// Throws input_error when seq is not zero-sum.
std::vector<Factorization> factorizations(const AtomSet& atoms, const Mults& seq);

LengthSet length_set(const AtomSet& atoms, const Mults& seq);

/// Successive gaps of a length set.
std::vector<std::uint64_t> delta_of(const LengthSet& lengths);

/// Cancel the common part of z and z', then take the larger remaining
/// number of atoms.
std::uint64_t distance(const Factorization& z1, const Factorization& z2);

/// 0 when seq has at most one factorization; otherwise the bottleneck
/// threshold for chaining any two factorizations, computed as the largest
/// edge of a minimum spanning tree of the distance graph.
std::uint64_t catenary_degree(const AtomSet& atoms, const Mults& seq);

/// Monotone lower bounds for the monoid-level invariants, taken over all
/// zero-sum sequences of length at most maxlen. Exact values are never
/// claimed; callers must carry the bound.
std::uint64_t catenary_bounded(const GroundSet& ground, std::uint64_t maxlen,
                               const SearchLimits& limits = {});
std::uint64_t tame_bounded(const GroundSet& ground, std::size_t atom_index, std::uint64_t maxlen,
                           const SearchLimits& limits = {});
std::vector<std::uint64_t> delta_bounded(const GroundSet& ground, std::uint64_t maxlen,
                                         const SearchLimits& limits = {});
/// Minima of the bounded distance sets over all nonempty subsets of the
/// ground set (with nonempty distance set). Hard cap: |ground| <= 16.
std::vector<std::uint64_t> delta_star_bounded(const GroundSet& ground, std::uint64_t maxlen,
                                              const SearchLimits& limits = {});

} // namespace zsm

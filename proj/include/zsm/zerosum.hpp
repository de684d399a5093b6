#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "zsm/diophantine.hpp"
#include "zsm/group.hpp"

namespace zsm {

/// Finite ordered alphabet of distinct group elements. The order is part of
/// the identity: ground sets with permuted elements are different objects.
class GroundSet {
public:
    GroundSet() = default; // empty set over the trivial group
    GroundSet(FgGroup group, IntMat elements);

    const FgGroup& group() const { return group_; }
    std::size_t size() const { return elements_.size(); }
    const IntVec& coords(std::size_t i) const { return elements_[i]; }
    const IntMat& element_coords() const { return elements_; }
    GroupElement element(std::size_t i) const { return group_.element(elements_[i]); }
    std::vector<GroupElement> elements() const;

    bool operator==(const GroundSet& o) const {
        return group_ == o.group_ && elements_ == o.elements_;
    }
    bool operator!=(const GroundSet& o) const { return !(*this == o); }

    /// Stable textual form; two ground sets are equal iff their keys match.
    std::string canonical_key() const;

private:
    FgGroup group_;
    IntMat elements_; // torsion coordinates reduced, pairwise distinct
};

/// A sequence over a ground set, as the multiplicity vector of its terms.
struct ZSequence {
    GroundSet ground;
    Mults mult;
};

std::uint64_t seq_length(const Mults& mult);
std::vector<std::size_t> seq_support(const Mults& mult);
GroupElement seq_sum(const GroundSet& ground, const Mults& mult);

/// The complete set of minimal zero-sum sequences over a ground set, in
/// lexicographic multiplicity order, with a per-element membership index.
struct AtomSet {
    GroundSet ground;
    std::vector<Mults> atoms;
    std::vector<std::vector<std::size_t>> element_atoms; // per ground index

    std::uint64_t atom_length(std::size_t j) const { return seq_length(atoms[j]); }
};

/// Atoms of B(ground). Results are memoized per ground set for the life of
/// the process (thread-safe, idempotent); the returned object is shared.
std::shared_ptr<const AtomSet> atoms_of(const GroundSet& ground, const SearchLimits& limits = {});

/// Install a precomputed atom set in the memo table (used by the disk
/// cache). The payload must already be verified by the caller.
void memoize_atoms(const AtomSet& atoms);

/// Drop every memoized atom set (forces recomputation).
void clear_atom_memo();

bool is_condensed(const AtomSet& atoms);
bool is_condensed(const GroundSet& ground, const SearchLimits& limits = {});

struct CondenseResult {
    GroundSet ground;
    std::vector<std::size_t> kept; // original indices that survived
};
CondenseResult condense(const GroundSet& ground, const SearchLimits& limits = {});

struct ExponentPair {
    std::uint32_t gcd = 0;
    std::uint32_t min = 0;
};

/// gcd and min of the valuations of element g over the atoms containing it.
/// The gcd equals the exponent of the corresponding valuation; min == gcd
/// exactly when the element represents a minimal prime, so the pair doubles
/// as a diagnostic. Throws input_error when g lies in no atom.
ExponentPair exponent_e(const AtomSet& atoms, std::size_t g);
ExponentPair exponent_e(const GroundSet& ground, std::size_t g, const SearchLimits& limits = {});

/// Maximal atom length (Davenport-type constant of the ground set); 0 when
/// there are no atoms.
std::uint64_t davenport(const AtomSet& atoms);
std::uint64_t davenport(const GroundSet& ground, const SearchLimits& limits = {});

/// All zero-sum multiplicity vectors with total length <= maxlen, in
/// lexicographic order (the empty sequence first). Shared by the bounded
/// sweeps and the transfer verification.
std::vector<Mults> zero_sum_sequences_up_to(const GroundSet& ground, std::uint64_t maxlen);

} // namespace zsm

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zsm/factorization.hpp"
#include "zsm/zerosum.hpp"

namespace zsm {

/// Support classification of a condensed ground set: elements are grouped
/// by the set of atoms containing them, classes are ordered by containment
/// of the associated prime ideals, and the minimal classes carry a chosen
/// representative and its valuation exponent.
struct PrimeClassification {
    std::vector<std::vector<std::size_t>> classes; // sorted members; ordered by first member
    std::vector<std::size_t> class_of;             // ground index -> class id
    std::vector<std::vector<char>> below;          // below[a][b]: q_a contained in q_b
    std::vector<std::size_t> minimal_classes;      // class ids, ascending
    std::vector<std::size_t> rep;                  // per minimal class: lowest member index
    std::vector<ExponentPair> exponent;            // per minimal class, of the representative
};

/// Requires a condensed ground set (every element occurs in some atom).
PrimeClassification classify_primes(const AtomSet& atoms);

/// One block-homomorphism step: the divisor theory of B(source) built from
/// its atoms, the class group of that divisor theory as a lattice quotient,
/// and the induced ground set of prime classes.
struct RefinementStep {
    GroundSet source;
    PrimeClassification classification;
    FgGroup class_group;
    GroundSet target;
    std::vector<std::size_t> target_index; // per minimal class -> target element

    // diagnostics
    long source_rank = 0;      // torsion-free rank of <source>
    long class_group_rank = 0; // torsion-free rank of the class group
    std::vector<ExponentPair> element_exponent; // per source index
    std::vector<char> element_minimal;          // per source index: lies in a minimal class
    std::vector<char> gcd_ne_min;               // per source index: exponent gcd != min
    std::vector<std::vector<std::size_t>> merges; // minimal classes sharing a target element
};

RefinementStep divisor_theory_step(const GroundSet& condensed, const SearchLimits& limits = {});

/// Image of a zero-sum sequence under the step's block homomorphism:
/// representative valuations divided by the exponents, pushed onto the
/// class-group images. Never increases the length.
Mults apply_beta(const RefinementStep& step, const Mults& seq);

/// Failing pair (g, h): h or -h does not lie in the submonoid generated by
/// the other elements. nullopt means the inclusion B(G0) -> F(G0) is a
/// divisor theory.
std::optional<std::pair<std::size_t, std::size_t>>
divisor_theory_witness(const GroundSet& ground, const SearchLimits& limits = {});

bool is_divisor_theory(const GroundSet& ground, const SearchLimits& limits = {});

/// Iterated block homomorphisms from the condensed input down to a ground
/// set whose inclusion into its free monoid is a divisor theory. Stops at
/// the first such ground set; extra_steps > 0 keeps iterating past it (the
/// property is preserved, each further step is an isomorphic reshaping).
struct RefinementChain {
    GroundSet original;
    GroundSet source;               // condensed original
    std::vector<std::size_t> kept;  // original indices kept by condensing
    std::vector<RefinementStep> steps;
    GroundSet final;
};

RefinementChain refine_chain(const GroundSet& ground, unsigned max_steps = 32,
                             const SearchLimits& limits = {}, unsigned extra_steps = 0);

/// theta* of the chain applied to a sequence over the original ground set.
Mults apply_chain(const RefinementChain& chain, const Mults& seq_over_original);

/// Checks the transfer contract on every zero-sum sequence B of length at
/// most maxlen over the source: length sets are preserved exactly, every
/// 2-splitting of theta*(B) lifts, only the empty sequence maps to the
/// empty sequence, and the catenary degrees satisfy
/// c(theta* B) <= c(B) <= max(c(theta* B), 2).
struct TransferViolation {
    std::string kind; // "lengths", "splitting", "unit", "catenary"
    Mults seq;
    std::string detail;
};
struct TransferReport {
    std::uint64_t sequences_checked = 0;
    std::vector<TransferViolation> violations;
    bool passed() const { return violations.empty(); }
};

TransferReport verify_transfer(const RefinementChain& chain, std::uint64_t maxlen,
                               const SearchLimits& limits = {});

/// Inner-direct-product check: the ground set lives in Z^s (s >= 2) and is
/// partitioned into a line family G1 (a_v = k_v * a_1 with every k_v != -1)
/// and G2 (nonzero, b_2 = -b_1). Returns true when every atom is supported
/// wholly inside one part. Throws input_error on a shape violation.
bool example_4_6_check(const GroundSet& ground, const std::vector<char>& in_second_part,
                       const SearchLimits& limits = {});

/// The infinite-class-group worked example: G1 inside N_0^2 (truncated to
/// entries <= truncation), a with both coordinates negative. Computes
/// Gamma = <G1>/(<G1> meet Z a), the images of G1 in Gamma when Gamma is
/// infinite cyclic (sign chosen so the image set leans nonpositive), and
/// whether the images generate Gamma as a monoid (the cofinality condition
/// restricted to the truncation).
struct Example47Result {
    FgGroup gamma;
    bool gamma_is_z = false;
    std::vector<Int> images; // sorted ascending; empty unless gamma_is_z
    bool condensed = false;
};

Example47Result example_4_7_transfer(const IntMat& g1, const IntVec& a, const Int& truncation,
                                     const SearchLimits& limits = {});

} // namespace zsm

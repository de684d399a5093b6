#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "zsm/errors.hpp"

namespace zsm {

using Int = mpz_class;
using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;

class FgGroup;

/// Element of a finitely generated abelian group, stored as one coordinate
/// vector: free coordinates first, then torsion coordinates reduced into
/// [0, n_i). Construct through FgGroup::element() so the reduction invariant
/// holds.
struct GroupElement {
    GroupElement() = default;

    const IntVec& coords() const { return coords_; }
    bool operator==(const GroupElement& o) const;
    bool operator!=(const GroupElement& o) const { return !(*this == o); }

private:
    friend class FgGroup;
    friend GroupElement gp_add(const GroupElement&, const GroupElement&);
    friend GroupElement gp_neg(const GroupElement&);
    friend GroupElement gp_sub(const GroupElement&, const GroupElement&);
    friend GroupElement gp_scale(const Int&, const GroupElement&);
    friend bool is_zero(const GroupElement&);
    friend Int order_of(const GroupElement&);
    friend class SubgroupBasis;
    friend struct QuotientMap;

    GroupElement(const FgGroup* g, IntVec c) : group_(g), coords_(std::move(c)) {}
    const FgGroup* group_ = nullptr; // null means the trivial group
    IntVec coords_;

public:
    const FgGroup& group() const;
};

/// Z^rank ⊕ Z/n_1 ⊕ ... ⊕ Z/n_k with the moduli canonicalized to
/// invariant-factor form n_1 | n_2 | ... | n_k, each >= 2. Two groups are
/// equal iff rank and the canonical moduli agree. Instances are immutable;
/// elements keep a pointer to their group, so groups are managed through
/// shared registration (see intern()) and live for the whole process.
class FgGroup {
public:
    FgGroup() = default; // trivial group
    FgGroup(long rank, IntVec moduli);

    long rank() const { return rank_; }
    const IntVec& torsion() const { return torsion_; }
    long torsion_count() const { return static_cast<long>(torsion_.size()); }
    long dim() const { return rank_ + torsion_count(); }
    bool is_trivial() const { return dim() == 0; }
    /// Group order; 0 when infinite.
    Int order() const;

    bool operator==(const FgGroup& o) const;
    bool operator!=(const FgGroup& o) const { return !(*this == o); }

    GroupElement zero() const;
    /// Validates the coordinate count and reduces torsion coordinates.
    GroupElement element(IntVec coords) const;
    /// Standard generators: free basis vectors then torsion basis vectors.
    std::vector<GroupElement> standard_generators() const;

    /// Returns the canonical interned copy of this group. Elements refer to
    /// interned groups so that GroupElement stays cheap to copy.
    const FgGroup* intern() const;

private:
    long rank_ = 0;
    IntVec torsion_;
};

GroupElement gp_add(const GroupElement& a, const GroupElement& b);
GroupElement gp_neg(const GroupElement& a);
GroupElement gp_sub(const GroupElement& a, const GroupElement& b);
GroupElement gp_scale(const Int& n, const GroupElement& g);
bool is_zero(const GroupElement& g);
/// Order of g in its group; 0 when infinite.
Int order_of(const GroupElement& g);

/// Canonical row Hermite normal form of the lattice spanned by the rows.
/// Pivots are positive, strictly right-down, entries above a pivot reduced
/// into [0, pivot). Zero rows are dropped; equal lattices give identical
/// matrices.
IntMat hermite_normal_form(IntMat rows);

/// Smith normal form: returns the diagonal d_1 | d_2 | ... (nonnegative,
/// padded with zeros to min(rows, cols)) and the right unimodular transform
/// V (cols x cols) with U*A*V diagonal.
struct SmithResult {
    IntVec diag;
    IntMat v;
};
SmithResult smith_normal_form(IntMat a);

/// Subgroup of an FgGroup, stored as the canonical HNF of the integer
/// lattice in Z^dim spanned by lifts of the generators together with the
/// torsion relation rows n_i * e_{rank+i}. Equal subgroups produce
/// identical matrices.
class SubgroupBasis {
public:
    SubgroupBasis() = default;
    const FgGroup& group() const { return *group_; }
    const IntMat& matrix() const { return rows_; }
    long lattice_rank() const { return static_cast<long>(rows_.size()); }
    /// Torsion-free rank of the subgroup as an abstract group.
    long rank() const { return lattice_rank() - group().torsion_count(); }

    bool contains(const GroupElement& g) const;
    bool contains_vector(const IntVec& v) const;
    /// Integer coordinates of v with respect to the HNF rows, if v lies in
    /// the lattice.
    std::optional<IntVec> solve(const IntVec& v) const;

    bool operator==(const SubgroupBasis& o) const;
    bool operator!=(const SubgroupBasis& o) const { return !(*this == o); }

private:
    friend SubgroupBasis subgroup_from(const FgGroup&, const std::vector<GroupElement>&);
    friend SubgroupBasis subgroup_from_vectors(const FgGroup&, const IntMat&);
    const FgGroup* group_ = nullptr;
    IntMat rows_;
};

SubgroupBasis subgroup_from(const FgGroup& group, const std::vector<GroupElement>& gens);
/// Same, with generators given as raw coordinate vectors of length dim.
SubgroupBasis subgroup_from_vectors(const FgGroup& group, const IntMat& gens);

/// Quotient ambient/sub in canonical invariant-factor form, plus the
/// projection taking elements of the ambient subgroup to quotient elements.
struct QuotientMap {
    FgGroup quotient;
    GroupElement project(const GroupElement& g) const;
    GroupElement project_vector(const IntVec& coords) const;

    // internals
    SubgroupBasis ambient;        // HNF basis of the ambient lattice (m rows)
    IntMat vmat;                  // m x m column transform from the SNF
    IntVec diag;                  // m entries; nonzero entries first, then zeros
    std::vector<std::size_t> free_pos;
    std::vector<std::size_t> tors_pos;
};

QuotientMap quotient_structure(const SubgroupBasis& ambient, const SubgroupBasis& sub);

long rank_of(const SubgroupBasis& s);

} // namespace zsm

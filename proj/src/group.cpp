#include "zsm/group.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace zsm {

namespace {

const FgGroup& trivial_group() {
    static const FgGroup g;
    return g;
}

std::string group_key(long rank, const IntVec& torsion) {
    std::ostringstream os;
    os << rank;
    for (const auto& n : torsion)
        os << ',' << n;
    return os.str();
}

// floored remainder into [0, n)
Int mod_reduce(const Int& c, const Int& n) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), n.get_mpz_t());
    return r;
}

// floored quotient, used to reduce entries above an HNF pivot into [0, pivot)
Int fdiv(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// truncated quotient for gcd-style elimination
Int tdiv(const Int& a, const Int& b) {
    Int q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

} // namespace

// ---------------------------------------------------------------- FgGroup

FgGroup::FgGroup(long rank, IntVec moduli) : rank_(rank), torsion_(std::move(moduli)) {
    if (rank_ < 0)
        throw input_error("group rank must be nonnegative");
    for (const auto& n : torsion_)
        if (n < 2)
            throw input_error("torsion moduli must be >= 2");
    // canonicalize to an ascending divisibility chain via pairwise gcd/lcm
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < torsion_.size(); ++i) {
            for (std::size_t j = i + 1; j < torsion_.size(); ++j) {
                if (torsion_[j] % torsion_[i] != 0) {
                    Int g = gcd(torsion_[i], torsion_[j]);
                    Int l = torsion_[i] / g * torsion_[j];
                    torsion_[i] = g;
                    torsion_[j] = l;
                    changed = true;
                }
            }
        }
    }
    std::sort(torsion_.begin(), torsion_.end());
    torsion_.erase(std::remove(torsion_.begin(), torsion_.end(), Int(1)), torsion_.end());
}

Int FgGroup::order() const {
    if (rank_ > 0)
        return 0;
    Int o = 1;
    for (const auto& n : torsion_)
        o *= n;
    return o;
}

bool FgGroup::operator==(const FgGroup& o) const {
    return rank_ == o.rank_ && torsion_ == o.torsion_;
}

GroupElement FgGroup::zero() const {
    return element(IntVec(static_cast<std::size_t>(dim()), Int(0)));
}

GroupElement FgGroup::element(IntVec coords) const {
    if (static_cast<long>(coords.size()) != dim())
        throw input_error("element coordinate count does not match the group");
    for (long i = 0; i < torsion_count(); ++i)
        coords[rank_ + i] = mod_reduce(coords[rank_ + i], torsion_[i]);
    return GroupElement(intern(), std::move(coords));
}

std::vector<GroupElement> FgGroup::standard_generators() const {
    std::vector<GroupElement> gens;
    for (long i = 0; i < dim(); ++i) {
        IntVec c(static_cast<std::size_t>(dim()), Int(0));
        c[i] = 1;
        gens.push_back(element(std::move(c)));
    }
    return gens;
}

const FgGroup* FgGroup::intern() const {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<FgGroup>> table;
    std::lock_guard<std::mutex> lock(mu);
    auto key = group_key(rank_, torsion_);
    auto it = table.find(key);
    if (it == table.end())
        it = table.emplace(key, std::make_unique<FgGroup>(*this)).first;
    return it->second.get();
}

// ----------------------------------------------------------- GroupElement

const FgGroup& GroupElement::group() const {
    return group_ ? *group_ : trivial_group();
}

bool GroupElement::operator==(const GroupElement& o) const {
    return group() == o.group() && coords_ == o.coords_;
}

static void check_same_group(const GroupElement& a, const GroupElement& b) {
    if (a.group() != b.group())
        throw input_error("group mismatch");
}

GroupElement gp_add(const GroupElement& a, const GroupElement& b) {
    check_same_group(a, b);
    IntVec c(a.coords_);
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] += b.coords_[i];
    return a.group().element(std::move(c));
}

GroupElement gp_neg(const GroupElement& a) {
    IntVec c(a.coords_);
    for (auto& x : c)
        x = -x;
    return a.group().element(std::move(c));
}

GroupElement gp_sub(const GroupElement& a, const GroupElement& b) {
    return gp_add(a, gp_neg(b));
}

GroupElement gp_scale(const Int& n, const GroupElement& g) {
    IntVec c(g.coords_);
    for (auto& x : c)
        x *= n;
    return g.group().element(std::move(c));
}

bool is_zero(const GroupElement& g) {
    for (const auto& x : g.coords_)
        if (x != 0)
            return false;
    return true;
}

Int order_of(const GroupElement& g) {
    const FgGroup& grp = g.group();
    for (long i = 0; i < grp.rank(); ++i)
        if (g.coords_[i] != 0)
            return 0;
    Int o = 1;
    for (long i = 0; i < grp.torsion_count(); ++i) {
        const Int& n = grp.torsion()[i];
        const Int& c = g.coords_[grp.rank() + i];
        if (c != 0)
            o = lcm(o, n / gcd(n, c));
    }
    return o;
}

// ------------------------------------------------------------------- HNF

IntMat hermite_normal_form(IntMat rows) {
    if (rows.empty())
        return rows;
    const std::size_t d = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != d)
            throw input_error("ragged matrix");
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < d && pivot_row < rows.size(); ++col) {
        // gcd-reduce all entries below pivot_row in this column onto one row
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t i = pivot_row; i < rows.size(); ++i) {
                if (rows[i][col] != 0 &&
                    (best == rows.size() || cmp(abs(rows[i][col]), abs(rows[best][col])) < 0))
                    best = i;
            }
            if (best == rows.size())
                break;
            std::swap(rows[pivot_row], rows[best]);
            bool cleared = true;
            for (std::size_t i = pivot_row + 1; i < rows.size(); ++i) {
                if (rows[i][col] == 0)
                    continue;
                Int q = tdiv(rows[i][col], rows[pivot_row][col]);
                if (q != 0)
                    for (std::size_t j = 0; j < d; ++j)
                        rows[i][j] -= q * rows[pivot_row][j];
                if (rows[i][col] != 0)
                    cleared = false;
            }
            if (cleared)
                break;
        }
        if (rows[pivot_row][col] == 0)
            continue;
        if (rows[pivot_row][col] < 0)
            for (std::size_t j = 0; j < d; ++j)
                rows[pivot_row][j] = -rows[pivot_row][j];
        for (std::size_t i = 0; i < pivot_row; ++i) {
            Int q = fdiv(rows[i][col], rows[pivot_row][col]);
            if (q != 0)
                for (std::size_t j = 0; j < d; ++j)
                    rows[i][j] -= q * rows[pivot_row][j];
        }
        ++pivot_row;
    }
    rows.resize(pivot_row);
    return rows;
}

// ------------------------------------------------------------------- SNF

SmithResult smith_normal_form(IntMat a) {
    const std::size_t s = a.size();
    const std::size_t m = s ? a[0].size() : 0;
    SmithResult res;
    res.v.assign(m, IntVec(m, Int(0)));
    for (std::size_t i = 0; i < m; ++i)
        res.v[i][i] = 1;
    const std::size_t nmin = std::min(s, m);
    res.diag.assign(nmin, Int(0));
    if (nmin == 0)
        return res;

    auto col_sub = [&](std::size_t dst, std::size_t src, const Int& q) {
        // col_dst -= q * col_src, mirrored on V
        for (std::size_t i = 0; i < s; ++i)
            a[i][dst] -= q * a[i][src];
        for (std::size_t i = 0; i < m; ++i)
            res.v[i][dst] -= q * res.v[i][src];
    };
    auto col_swap = [&](std::size_t x, std::size_t y) {
        for (std::size_t i = 0; i < s; ++i)
            std::swap(a[i][x], a[i][y]);
        for (std::size_t i = 0; i < m; ++i)
            std::swap(res.v[i][x], res.v[i][y]);
    };

    for (std::size_t k = 0; k < nmin; ++k) {
        while (true) {
            // locate the smallest nonzero |entry| in the lower-right block
            std::size_t bi = s, bj = m;
            for (std::size_t i = k; i < s; ++i)
                for (std::size_t j = k; j < m; ++j)
                    if (a[i][j] != 0 &&
                        (bi == s || cmp(abs(a[i][j]), abs(a[bi][bj])) < 0)) {
                        bi = i;
                        bj = j;
                    }
            if (bi == s)
                break; // block is zero
            std::swap(a[k], a[bi]);
            if (bj != k)
                col_swap(k, bj);

            bool lone = true;
            for (std::size_t i = k + 1; i < s; ++i) {
                if (a[i][k] == 0)
                    continue;
                Int q = tdiv(a[i][k], a[k][k]);
                if (q != 0)
                    for (std::size_t j = 0; j < m; ++j)
                        a[i][j] -= q * a[k][j];
                if (a[i][k] != 0)
                    lone = false;
            }
            for (std::size_t j = k + 1; j < m; ++j) {
                if (a[k][j] == 0)
                    continue;
                Int q = tdiv(a[k][j], a[k][k]);
                if (q != 0)
                    col_sub(j, k, q);
                if (a[k][j] != 0)
                    lone = false;
            }
            if (!lone)
                continue;
            // pivot divides the rest of its row/column; enforce divisibility
            // of the remaining block
            bool divides = true;
            for (std::size_t i = k + 1; i < s && divides; ++i)
                for (std::size_t j = k + 1; j < m && divides; ++j)
                    if (a[i][j] % a[k][k] != 0) {
                        // fold row i into row k to expose a smaller pivot
                        for (std::size_t t = 0; t < m; ++t)
                            a[k][t] += a[i][t];
                        divides = false;
                    }
            if (divides)
                break;
        }
        if (a[k][k] < 0)
            for (std::size_t j = 0; j < m; ++j)
                a[k][j] = -a[k][j];
        res.diag[k] = a[k][k];
        if (a[k][k] == 0)
            break; // all later diagonals are zero as well
    }
    return res;
}

// --------------------------------------------------------- SubgroupBasis

SubgroupBasis subgroup_from_vectors(const FgGroup& group, const IntMat& gens) {
    const std::size_t d = static_cast<std::size_t>(group.dim());
    IntMat rows;
    for (const auto& g : gens) {
        if (g.size() != d)
            throw input_error("generator dimension does not match the group");
        rows.push_back(g);
    }
    // adjoin one relation row per torsion factor so that every subgroup
    // question becomes a pure lattice question
    for (long i = 0; i < group.torsion_count(); ++i) {
        IntVec rel(d, Int(0));
        rel[group.rank() + i] = group.torsion()[i];
        rows.push_back(std::move(rel));
    }
    SubgroupBasis s;
    s.group_ = group.intern();
    s.rows_ = hermite_normal_form(std::move(rows));
    return s;
}

SubgroupBasis subgroup_from(const FgGroup& group, const std::vector<GroupElement>& gens) {
    IntMat rows;
    for (const auto& g : gens) {
        if (g.group() != group)
            throw input_error("group mismatch");
        rows.push_back(g.coords());
    }
    return subgroup_from_vectors(group, rows);
}

std::optional<IntVec> SubgroupBasis::solve(const IntVec& v) const {
    const std::size_t d = static_cast<std::size_t>(group().dim());
    if (v.size() != d)
        throw input_error("vector dimension does not match the group");
    IntVec w = v;
    IntVec x(rows_.size(), Int(0));
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        std::size_t p = 0;
        while (p < d && rows_[i][p] == 0)
            ++p;
        if (w[p] % rows_[i][p] != 0)
            return std::nullopt;
        Int q = w[p] / rows_[i][p];
        if (q != 0)
            for (std::size_t j = p; j < d; ++j)
                w[j] -= q * rows_[i][j];
        x[i] = q;
    }
    for (const auto& c : w)
        if (c != 0)
            return std::nullopt;
    return x;
}

bool SubgroupBasis::contains_vector(const IntVec& v) const {
    return solve(v).has_value();
}

bool SubgroupBasis::contains(const GroupElement& g) const {
    if (g.group() != group())
        throw input_error("group mismatch");
    return contains_vector(g.coords());
}

bool SubgroupBasis::operator==(const SubgroupBasis& o) const {
    return group() == o.group() && rows_ == o.rows_;
}

long rank_of(const SubgroupBasis& s) { return s.rank(); }

// ----------------------------------------------------- quotient_structure

QuotientMap quotient_structure(const SubgroupBasis& ambient, const SubgroupBasis& sub) {
    if (ambient.group() != sub.group())
        throw input_error("group mismatch");
    const std::size_t m = ambient.matrix().size();
    // express each generator of sub in the ambient basis
    IntMat c;
    for (const auto& row : sub.matrix()) {
        auto x = ambient.solve(row);
        if (!x)
            throw input_error("sub is not contained in ambient");
        c.push_back(std::move(*x));
    }
    if (c.empty())
        c.push_back(IntVec(m, Int(0))); // keep the column count

    SmithResult snf = smith_normal_form(std::move(c));
    QuotientMap qm;
    qm.ambient = ambient;
    qm.vmat = std::move(snf.v);
    qm.diag.assign(m, Int(0));
    for (std::size_t i = 0; i < snf.diag.size() && i < m; ++i)
        qm.diag[i] = snf.diag[i];

    IntVec torsion;
    for (std::size_t i = 0; i < m; ++i) {
        if (qm.diag[i] == 0)
            qm.free_pos.push_back(i);
        else if (qm.diag[i] >= 2) {
            qm.tors_pos.push_back(i);
            torsion.push_back(qm.diag[i]);
        } // diag 1 coordinates die in the quotient
    }
    qm.quotient = FgGroup(static_cast<long>(qm.free_pos.size()), std::move(torsion));
    return qm;
}

GroupElement QuotientMap::project_vector(const IntVec& coords) const {
    const std::size_t m = ambient.matrix().size();
    auto x = ambient.solve(coords);
    if (!x)
        throw input_error("element does not lie in the ambient subgroup");
    // y = x * V
    IntVec y(m, Int(0));
    for (std::size_t i = 0; i < m; ++i)
        if ((*x)[i] != 0)
            for (std::size_t j = 0; j < m; ++j)
                y[j] += (*x)[i] * vmat[i][j];
    IntVec out;
    out.reserve(free_pos.size() + tors_pos.size());
    for (auto p : free_pos)
        out.push_back(y[p]);
    for (auto p : tors_pos)
        out.push_back(y[p]);
    return quotient.element(std::move(out));
}

GroupElement QuotientMap::project(const GroupElement& g) const {
    if (g.group() != ambient.group())
        throw input_error("group mismatch");
    return project_vector(g.coords());
}

} // namespace zsm

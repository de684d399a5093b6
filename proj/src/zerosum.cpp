#include "zsm/zerosum.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

namespace zsm {

GroundSet::GroundSet(FgGroup group, IntMat elements) : group_(std::move(group)) {
    elements_.reserve(elements.size());
    std::set<IntVec> seen;
    for (auto& e : elements) {
        IntVec reduced = group_.element(std::move(e)).coords();
        if (!seen.insert(reduced).second)
            throw input_error("ground set elements must be pairwise distinct");
        elements_.push_back(std::move(reduced));
    }
}

std::vector<GroupElement> GroundSet::elements() const {
    std::vector<GroupElement> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i)
        out.push_back(element(i));
    return out;
}

std::string GroundSet::canonical_key() const {
    std::ostringstream os;
    os << group_.rank();
    for (const auto& n : group_.torsion())
        os << ',' << n;
    for (const auto& e : elements_) {
        os << '|';
        for (std::size_t i = 0; i < e.size(); ++i)
            os << (i ? "," : "") << e[i];
    }
    return os.str();
}

std::uint64_t seq_length(const Mults& mult) {
    std::uint64_t n = 0;
    for (auto m : mult)
        n += m;
    return n;
}

std::vector<std::size_t> seq_support(const Mults& mult) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < mult.size(); ++i)
        if (mult[i])
            s.push_back(i);
    return s;
}

GroupElement seq_sum(const GroundSet& ground, const Mults& mult) {
    if (mult.size() != ground.size())
        throw input_error("multiplicity vector does not match the ground set");
    IntVec acc(static_cast<std::size_t>(ground.group().dim()), Int(0));
    for (std::size_t i = 0; i < mult.size(); ++i)
        if (mult[i])
            for (std::size_t c = 0; c < acc.size(); ++c)
                acc[c] += Int(mult[i]) * ground.coords(i)[c];
    return ground.group().element(std::move(acc));
}

namespace {

AtomSet build_atom_set(const GroundSet& ground, const SearchLimits& limits) {
    DiophSystem sys(ground.group(), ground.elements());
    auto sols = minimal_solutions(sys, limits);
    AtomSet as;
    as.ground = ground;
    as.atoms = std::move(sols.solutions);
    as.element_atoms.assign(ground.size(), {});
    for (std::size_t j = 0; j < as.atoms.size(); ++j)
        for (std::size_t i = 0; i < ground.size(); ++i)
            if (as.atoms[j][i])
                as.element_atoms[i].push_back(j);
    return as;
}

std::mutex g_memo_mu;
std::map<std::string, std::shared_ptr<const AtomSet>>& memo_table() {
    static std::map<std::string, std::shared_ptr<const AtomSet>> t;
    return t;
}

} // namespace

std::shared_ptr<const AtomSet> atoms_of(const GroundSet& ground, const SearchLimits& limits) {
    const std::string key = ground.canonical_key();
    {
        std::lock_guard<std::mutex> lock(g_memo_mu);
        auto it = memo_table().find(key);
        if (it != memo_table().end())
            return it->second;
    }
    auto computed = std::make_shared<const AtomSet>(build_atom_set(ground, limits));
    std::lock_guard<std::mutex> lock(g_memo_mu);
    auto [it, inserted] = memo_table().emplace(key, computed);
    return it->second; // concurrent duplicates compute the same value
}

void memoize_atoms(const AtomSet& atoms) {
    auto copy = std::make_shared<const AtomSet>(atoms);
    std::lock_guard<std::mutex> lock(g_memo_mu);
    memo_table().emplace(atoms.ground.canonical_key(), std::move(copy));
}

void clear_atom_memo() {
    std::lock_guard<std::mutex> lock(g_memo_mu);
    memo_table().clear();
}

bool is_condensed(const AtomSet& atoms) {
    for (const auto& list : atoms.element_atoms)
        if (list.empty())
            return false;
    return true;
}

bool is_condensed(const GroundSet& ground, const SearchLimits& limits) {
    return is_condensed(*atoms_of(ground, limits));
}

CondenseResult condense(const GroundSet& ground, const SearchLimits& limits) {
    auto atoms = atoms_of(ground, limits);
    CondenseResult res;
    IntMat kept_coords;
    for (std::size_t i = 0; i < ground.size(); ++i) {
        if (!atoms->element_atoms[i].empty()) {
            res.kept.push_back(i);
            kept_coords.push_back(ground.coords(i));
        }
    }
    res.ground = GroundSet(ground.group(), std::move(kept_coords));
    return res;
}

ExponentPair exponent_e(const AtomSet& atoms, std::size_t g) {
    if (g >= atoms.ground.size())
        throw input_error("element index out of range");
    const auto& list = atoms.element_atoms[g];
    if (list.empty())
        throw input_error("exponent undefined: element occurs in no atom");
    ExponentPair e;
    for (auto j : list) {
        const std::uint32_t v = atoms.atoms[j][g];
        e.gcd = e.gcd ? std::gcd(e.gcd, v) : v;
        e.min = e.min ? std::min(e.min, v) : v;
    }
    return e;
}

ExponentPair exponent_e(const GroundSet& ground, std::size_t g, const SearchLimits& limits) {
    return exponent_e(*atoms_of(ground, limits), g);
}

std::uint64_t davenport(const AtomSet& atoms) {
    std::uint64_t d = 0;
    for (std::size_t j = 0; j < atoms.atoms.size(); ++j)
        d = std::max(d, atoms.atom_length(j));
    return d;
}

std::uint64_t davenport(const GroundSet& ground, const SearchLimits& limits) {
    return davenport(*atoms_of(ground, limits));
}

namespace {

void enumerate_rec(const GroundSet& ground, std::size_t idx, std::uint64_t remaining,
                   Mults& current, std::vector<Mults>& out) {
    if (idx == current.size()) {
        if (is_zero(seq_sum(ground, current)))
            out.push_back(current);
        return;
    }
    for (std::uint64_t c = 0; c <= remaining; ++c) {
        current[idx] = static_cast<std::uint32_t>(c);
        enumerate_rec(ground, idx + 1, remaining - c, current, out);
    }
    current[idx] = 0;
}

} // namespace

std::vector<Mults> zero_sum_sequences_up_to(const GroundSet& ground, std::uint64_t maxlen) {
    std::vector<Mults> out;
    Mults current(ground.size(), 0);
    enumerate_rec(ground, 0, maxlen, current, out);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace zsm

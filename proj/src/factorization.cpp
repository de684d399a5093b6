#include "zsm/factorization.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>

#include "zsm/parallel.hpp"

namespace zsm {

namespace {

bool leq(const Mults& a, const Mults& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i])
            return false;
    return true;
}

Mults minus(const Mults& a, const Mults& b, std::uint32_t times) {
    Mults r = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] -= times * b[i];
    return r;
}

bool all_zero(const Mults& a) {
    for (auto x : a)
        if (x)
            return false;
    return true;
}

// Recursive descent over atom indices in canonical order, memoized on
// (remaining sequence, first allowed atom); avoids permutation duplicates
// and repeated subproblems.
struct FactorEnum {
    const AtomSet& atoms;
    std::map<std::pair<std::size_t, Mults>, std::vector<Factorization>> memo;

    const std::vector<Factorization>& tails(std::size_t idx, const Mults& residual) {
        auto key = std::make_pair(idx, residual);
        auto it = memo.find(key);
        if (it != memo.end())
            return it->second;
        std::vector<Factorization> out;
        if (all_zero(residual)) {
            out.push_back(Mults(atoms.atoms.size(), 0));
        } else if (idx < atoms.atoms.size()) {
            std::uint32_t maxc = std::numeric_limits<std::uint32_t>::max();
            const Mults& a = atoms.atoms[idx];
            for (std::size_t i = 0; i < a.size(); ++i)
                if (a[i])
                    maxc = std::min(maxc, residual[i] / a[i]);
            if (maxc == std::numeric_limits<std::uint32_t>::max())
                maxc = 0; // an all-zero atom cannot occur
            for (std::uint32_t c = 0; c <= maxc; ++c) {
                for (const auto& tail : tails(idx + 1, minus(residual, a, c))) {
                    Factorization f = tail;
                    f[idx] = c;
                    out.push_back(std::move(f));
                }
            }
            std::sort(out.begin(), out.end());
        }
        return memo.emplace(std::move(key), std::move(out)).first->second;
    }
};

} // namespace

std::vector<Factorization> factorizations(const AtomSet& atoms, const Mults& seq) {
    if (seq.size() != atoms.ground.size())
        throw input_error("multiplicity vector does not match the ground set");
    if (!is_zero(seq_sum(atoms.ground, seq)))
        throw input_error("sequence is not zero-sum");
    FactorEnum fe{atoms, {}};
    return fe.tails(0, seq);
}

LengthSet length_set(const AtomSet& atoms, const Mults& seq) {
    LengthSet lengths;
    for (const auto& z : factorizations(atoms, seq))
        lengths.push_back(seq_length(z));
    std::sort(lengths.begin(), lengths.end());
    lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
    return lengths;
}

std::vector<std::uint64_t> delta_of(const LengthSet& lengths) {
    std::vector<std::uint64_t> d;
    for (std::size_t i = 1; i < lengths.size(); ++i)
        d.push_back(lengths[i] - lengths[i - 1]);
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    return d;
}

std::uint64_t distance(const Factorization& z1, const Factorization& z2) {
    if (z1.size() != z2.size())
        throw input_error("factorizations over different atom sets");
    std::uint64_t l1 = 0, l2 = 0;
    for (std::size_t i = 0; i < z1.size(); ++i) {
        const std::uint32_t common = std::min(z1[i], z2[i]);
        l1 += z1[i] - common;
        l2 += z2[i] - common;
    }
    return std::max(l1, l2);
}

std::uint64_t catenary_degree(const AtomSet& atoms, const Mults& seq) {
    const auto zs = factorizations(atoms, seq);
    if (zs.size() <= 1)
        return 0;
    // bottleneck edge of a minimum spanning tree (Prim)
    const std::size_t n = zs.size();
    std::vector<std::uint64_t> best(n, std::numeric_limits<std::uint64_t>::max());
    std::vector<bool> used(n, false);
    best[0] = 0;
    std::uint64_t bottleneck = 0;
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t u = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!used[i] && (u == n || best[i] < best[u]))
                u = i;
        used[u] = true;
        bottleneck = std::max(bottleneck, best[u]);
        for (std::size_t v = 0; v < n; ++v)
            if (!used[v])
                best[v] = std::min(best[v], distance(zs[u], zs[v]));
    }
    return bottleneck;
}

namespace {

// deterministic max-reduction over the zero-sum sequences of bounded length
template <typename PerSeq>
std::uint64_t sweep_max(const GroundSet& ground, std::uint64_t maxlen, const SearchLimits& limits,
                        PerSeq per_seq) {
    auto atoms = atoms_of(ground, limits);
    const auto seqs = zero_sum_sequences_up_to(ground, maxlen);
    std::atomic<std::uint64_t> result{0};
    parallel_chunks(seqs.size(), [&](std::size_t lo, std::size_t hi) {
        std::uint64_t local = 0;
        for (std::size_t i = lo; i < hi; ++i)
            local = std::max(local, per_seq(*atoms, seqs[i]));
        std::uint64_t cur = result.load();
        while (local > cur && !result.compare_exchange_weak(cur, local)) {
        }
    });
    return result.load();
}

} // namespace

std::uint64_t catenary_bounded(const GroundSet& ground, std::uint64_t maxlen,
                               const SearchLimits& limits) {
    return sweep_max(ground, maxlen, limits, [](const AtomSet& atoms, const Mults& seq) {
        return catenary_degree(atoms, seq);
    });
}

std::uint64_t tame_bounded(const GroundSet& ground, std::size_t atom_index, std::uint64_t maxlen,
                           const SearchLimits& limits) {
    auto atoms = atoms_of(ground, limits);
    if (atom_index >= atoms->atoms.size())
        throw input_error("atom index out of range");
    return sweep_max(ground, maxlen, limits,
                     [atom_index](const AtomSet& as, const Mults& seq) -> std::uint64_t {
                         const auto zs = factorizations(as, seq);
                         std::vector<const Factorization*> through;
                         for (const auto& z : zs)
                             if (z[atom_index] > 0)
                                 through.push_back(&z);
                         if (through.empty())
                             return 0; // u does not divide this sequence
                         std::uint64_t worst = 0;
                         for (const auto& z : zs) {
                             std::uint64_t nearest = std::numeric_limits<std::uint64_t>::max();
                             for (const auto* zu : through)
                                 nearest = std::min(nearest, distance(z, *zu));
                             worst = std::max(worst, nearest);
                         }
                         return worst;
                     });
}

std::vector<std::uint64_t> delta_bounded(const GroundSet& ground, std::uint64_t maxlen,
                                         const SearchLimits& limits) {
    auto atoms = atoms_of(ground, limits);
    const auto seqs = zero_sum_sequences_up_to(ground, maxlen);
    std::vector<std::vector<std::uint64_t>> parts(seqs.size());
    parallel_chunks(seqs.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            parts[i] = delta_of(length_set(*atoms, seqs[i]));
    });
    std::vector<std::uint64_t> out;
    for (const auto& p : parts)
        out.insert(out.end(), p.begin(), p.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::uint64_t> delta_star_bounded(const GroundSet& ground, std::uint64_t maxlen,
                                              const SearchLimits& limits) {
    if (ground.size() > 16)
        throw input_error("delta* sweep is capped at 16 ground elements");
    std::vector<std::uint64_t> mins;
    for (std::uint32_t mask = 1; mask < (1u << ground.size()); ++mask) {
        IntMat coords;
        for (std::size_t i = 0; i < ground.size(); ++i)
            if (mask & (1u << i))
                coords.push_back(ground.coords(i));
        GroundSet sub(ground.group(), std::move(coords));
        auto d = delta_bounded(sub, maxlen, limits);
        if (!d.empty())
            mins.push_back(d.front());
    }
    std::sort(mins.begin(), mins.end());
    mins.erase(std::unique(mins.begin(), mins.end()), mins.end());
    return mins;
}

} // namespace zsm

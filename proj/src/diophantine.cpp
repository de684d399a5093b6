#include "zsm/diophantine.hpp"

#include <algorithm>
#include <atomic>
#include <limits>

#include "zsm/parallel.hpp"

namespace zsm {

DiophSystem::DiophSystem(FgGroup g, std::vector<GroupElement> cols)
    : group(std::move(g)), columns(std::move(cols)) {
    for (const auto& c : columns)
        if (c.group() != group)
            throw input_error("group mismatch: column does not belong to the system group");
}

namespace {

// x <= y componentwise with x != y
bool strictly_dominates(const Mults& y, const Mults& x) {
    bool strict = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (y[i] < x[i])
            return false;
        if (y[i] > x[i])
            strict = true;
    }
    return strict;
}

bool dominates_some(const std::vector<Mults>& minimals, const Mults& y) {
    for (const auto& m : minimals)
        if (strictly_dominates(y, m))
            return true;
    return false;
}

struct Node {
    Mults x;
    IntVec residual; // full coordinate vector, torsion reduced
};

struct Engine {
    const FgGroup& group;
    IntMat cols;                 // raw reduced coordinates, one per column
    std::vector<bool> col_free_zero;
    long rank;
    long tors;
    std::uint64_t budget;
    std::uint64_t used = 0;
    std::vector<std::uint32_t> cap; // per-column multiplicity cap

    Engine(const DiophSystem& sys, const SearchLimits& limits)
        : group(sys.group), rank(sys.group.rank()), tors(sys.group.torsion_count()),
          budget(limits.max_nodes) {
        for (const auto& c : sys.columns) {
            cols.push_back(c.coords());
            bool fz = true;
            for (long i = 0; i < rank; ++i)
                if (cols.back()[i] != 0)
                    fz = false;
            col_free_zero.push_back(fz);
        }
        cap.assign(cols.size(), std::numeric_limits<std::uint32_t>::max());
    }

    IntVec add_column(const IntVec& residual, std::size_t j) const {
        IntVec r = residual;
        for (long i = 0; i < rank; ++i)
            r[i] += cols[j][i];
        for (long i = 0; i < tors; ++i) {
            r[rank + i] += cols[j][rank + i];
            const Int& n = group.torsion()[i];
            if (r[rank + i] >= n)
                r[rank + i] -= n; // both summands lie in [0, n)
        }
        return r;
    }

    static bool residual_zero(const IntVec& r) {
        for (const auto& c : r)
            if (c != 0)
                return false;
        return true;
    }

    bool free_residual_zero(const IntVec& r) const {
        for (long i = 0; i < rank; ++i)
            if (r[i] != 0)
                return false;
        return true;
    }

    // Admissibility of extending by column j: columns without free part are
    // always allowed; from a zero free residual every column is allowed
    // (this subsumes the start from the unit vectors); otherwise the step
    // must point against the free residual.
    bool admissible(const IntVec& residual, std::size_t j, bool free_zero) const {
        if (col_free_zero[j] || free_zero)
            return true;
        Int dot = 0;
        for (long i = 0; i < rank; ++i)
            if (cols[j][i] != 0)
                dot += residual[i] * cols[j][i];
        return dot < 0;
    }

    // Runs the graded completion. stop_aux: when nonzero, the search stops
    // as soon as a minimal solution with x[stop_aux-1] == 1 is recorded and
    // reports found=true.
    struct Result {
        std::vector<Mults> minimals;
        bool stopped_early = false;
    };

    Result run(std::size_t stop_aux = 0) {
        Result res;
        const std::size_t m = cols.size();
        if (m == 0)
            return res;

        std::vector<Node> frontier;
        IntVec zero_res(static_cast<std::size_t>(rank + tors), Int(0));
        for (std::size_t j = 0; j < m; ++j) {
            if (cap[j] == 0)
                continue;
            Mults x(m, 0);
            x[j] = 1;
            frontier.push_back(Node{std::move(x), add_column(zero_res, j)});
            bump();
        }
        std::sort(frontier.begin(), frontier.end(),
                  [](const Node& a, const Node& b) { return a.x < b.x; });

        while (!frontier.empty()) {
            // harvest the solutions of this level before expanding it
            std::vector<Node> pending;
            pending.reserve(frontier.size());
            for (auto& node : frontier) {
                if (residual_zero(node.residual)) {
                    if (!dominates_some(res.minimals, node.x))
                        res.minimals.push_back(node.x);
                } else {
                    pending.push_back(std::move(node));
                }
            }
            if (stop_aux) {
                for (const auto& s : res.minimals)
                    if (s[stop_aux - 1] == 1) {
                        res.stopped_early = true;
                        return res;
                    }
            }

            // expand, chunked across workers; children are merged in source
            // order, so the result does not depend on the worker count
            std::vector<std::vector<Node>> parts(pending.size());
            std::atomic<std::uint64_t> generated{0};
            parallel_chunks(pending.size(), [&](std::size_t lo, std::size_t hi) {
                std::uint64_t local = 0;
                for (std::size_t idx = lo; idx < hi; ++idx) {
                    const Node& node = pending[idx];
                    const bool fz = free_residual_zero(node.residual);
                    for (std::size_t j = 0; j < m; ++j) {
                        if (node.x[j] >= cap[j])
                            continue;
                        if (!admissible(node.residual, j, fz))
                            continue;
                        Mults child = node.x;
                        child[j] += 1;
                        ++local;
                        if (dominates_some(res.minimals, child))
                            continue;
                        parts[idx].push_back(Node{std::move(child), add_column(node.residual, j)});
                    }
                }
                generated.fetch_add(local, std::memory_order_relaxed);
            });
            used += generated.load();
            if (used > budget)
                throw resource_limit_error("node budget exceeded in minimal-solution search", used);

            frontier.clear();
            for (auto& p : parts)
                for (auto& n : p)
                    frontier.push_back(std::move(n));
            std::sort(frontier.begin(), frontier.end(),
                      [](const Node& a, const Node& b) { return a.x < b.x; });
            frontier.erase(std::unique(frontier.begin(), frontier.end(),
                                       [](const Node& a, const Node& b) { return a.x == b.x; }),
                           frontier.end());
        }
        std::sort(res.minimals.begin(), res.minimals.end());
        return res;
    }

private:
    void bump() {
        if (++used > budget)
            throw resource_limit_error("node budget exceeded in minimal-solution search", used);
    }
};

} // namespace

MinimalSolutionSet minimal_solutions(const DiophSystem& sys, const SearchLimits& limits) {
    Engine eng(sys, limits);
    auto r = eng.run();
    return MinimalSolutionSet{sys, std::move(r.minimals)};
}

bool in_submonoid(const GroupElement& target, const std::vector<GroupElement>& gens,
                  const SearchLimits& limits) {
    const FgGroup& g = target.group();
    std::vector<GroupElement> cols = gens;
    cols.push_back(gp_neg(target));
    DiophSystem sys(g, std::move(cols));
    Engine eng(sys, limits);
    eng.cap.back() = 1; // solutions with a higher auxiliary count are useless here
    auto r = eng.run(sys.columns.size());
    if (r.stopped_early)
        return true;
    for (const auto& s : r.minimals)
        if (s.back() == 1)
            return true;
    return false;
}

} // namespace zsm

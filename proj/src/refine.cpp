#include "zsm/refine.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace zsm {

// ------------------------------------------------------- classify_primes

PrimeClassification classify_primes(const AtomSet& atoms) {
    if (!is_condensed(atoms))
        throw input_error("classify_primes requires a condensed ground set");
    const std::size_t n = atoms.ground.size();

    PrimeClassification pc;
    pc.class_of.assign(n, 0);
    std::map<std::vector<std::size_t>, std::size_t> by_membership;
    for (std::size_t i = 0; i < n; ++i) {
        auto it = by_membership.find(atoms.element_atoms[i]);
        if (it == by_membership.end()) {
            it = by_membership.emplace(atoms.element_atoms[i], pc.classes.size()).first;
            pc.classes.push_back({});
        }
        pc.class_of[i] = it->second;
        pc.classes[it->second].push_back(i);
    }

    // q_a <= q_b iff every atom meeting class a also meets class b; on the
    // membership sets this is plain inclusion of atom index lists.
    const std::size_t k = pc.classes.size();
    pc.below.assign(k, std::vector<char>(k, 0));
    for (std::size_t a = 0; a < k; ++a) {
        const auto& sa = atoms.element_atoms[pc.classes[a].front()];
        for (std::size_t b = 0; b < k; ++b) {
            const auto& sb = atoms.element_atoms[pc.classes[b].front()];
            pc.below[a][b] = std::includes(sb.begin(), sb.end(), sa.begin(), sa.end()) ? 1 : 0;
        }
    }
    for (std::size_t a = 0; a < k; ++a) {
        bool minimal = true;
        for (std::size_t b = 0; b < k && minimal; ++b)
            if (b != a && pc.below[b][a] && !pc.below[a][b])
                minimal = false;
        if (minimal)
            pc.minimal_classes.push_back(a);
    }
    for (auto c : pc.minimal_classes) {
        const std::size_t rep = pc.classes[c].front(); // lowest index tie-break
        pc.rep.push_back(rep);
        pc.exponent.push_back(exponent_e(atoms, rep));
    }
    return pc;
}

// -------------------------------------------------- divisor_theory_step

RefinementStep divisor_theory_step(const GroundSet& condensed, const SearchLimits& limits) {
    auto atoms = atoms_of(condensed, limits);
    RefinementStep step;
    step.source = condensed;
    step.classification = classify_primes(*atoms);
    const auto& pc = step.classification;
    const std::size_t m = pc.minimal_classes.size();

    // the divisor theory sends an atom A to (v_{f(q)}(A) / e(q))_q; the
    // class group is the cokernel of the lattice those vectors span in Z^m
    FgGroup free_m(static_cast<long>(m), {});
    IntMat del_rows;
    for (const auto& atom : atoms->atoms) {
        IntVec row;
        row.reserve(m);
        for (std::size_t q = 0; q < m; ++q) {
            const std::uint32_t v = atom[pc.rep[q]];
            if (v % pc.exponent[q].gcd != 0)
                throw input_error("internal: exponent does not divide an atom valuation");
            row.push_back(Int(v / pc.exponent[q].gcd));
        }
        del_rows.push_back(std::move(row));
    }
    SubgroupBasis ambient = subgroup_from(free_m, free_m.standard_generators());
    SubgroupBasis image = subgroup_from_vectors(free_m, del_rows);
    QuotientMap qm = quotient_structure(ambient, image);
    step.class_group = qm.quotient;

    // target ground set: distinct images of the basis classes, first
    // occurrence order; merged classes accumulate through target_index
    IntMat target_coords;
    std::map<IntVec, std::size_t> seen;
    std::map<std::size_t, std::vector<std::size_t>> merge_groups;
    for (std::size_t q = 0; q < m; ++q) {
        IntVec basis(m, Int(0));
        basis[q] = 1;
        GroupElement img = qm.project_vector(basis);
        auto it = seen.find(img.coords());
        if (it == seen.end()) {
            it = seen.emplace(img.coords(), target_coords.size()).first;
            target_coords.push_back(img.coords());
        }
        step.target_index.push_back(it->second);
        merge_groups[it->second].push_back(q);
    }
    step.target = GroundSet(step.class_group, std::move(target_coords));
    for (const auto& [tgt, group] : merge_groups)
        if (group.size() > 1)
            step.merges.push_back(group);

    // diagnostics
    step.source_rank = rank_of(subgroup_from(condensed.group(), condensed.elements()));
    step.class_group_rank = step.class_group.rank();
    for (std::size_t i = 0; i < condensed.size(); ++i) {
        ExponentPair e = exponent_e(*atoms, i);
        step.element_exponent.push_back(e);
        bool minimal = std::binary_search(pc.minimal_classes.begin(), pc.minimal_classes.end(),
                                          pc.class_of[i]);
        step.element_minimal.push_back(minimal ? 1 : 0);
        step.gcd_ne_min.push_back(e.gcd != e.min ? 1 : 0);
    }
    return step;
}

Mults apply_beta(const RefinementStep& step, const Mults& seq) {
    if (seq.size() != step.source.size())
        throw input_error("multiplicity vector does not match the step source");
    if (!is_zero(seq_sum(step.source, seq)))
        throw input_error("sequence is not zero-sum");
    Mults out(step.target.size(), 0);
    const auto& pc = step.classification;
    for (std::size_t q = 0; q < pc.minimal_classes.size(); ++q) {
        const std::uint32_t v = seq[pc.rep[q]];
        const std::uint32_t e = pc.exponent[q].gcd;
        if (v % e != 0)
            throw input_error("internal: exponent does not divide a sequence valuation");
        out[step.target_index[q]] += v / e;
    }
    return out;
}

// ------------------------------------------------------ divisor theory

std::optional<std::pair<std::size_t, std::size_t>>
divisor_theory_witness(const GroundSet& ground, const SearchLimits& limits) {
    const auto elements = ground.elements();
    for (std::size_t g = 0; g < elements.size(); ++g) {
        std::vector<GroupElement> rest;
        rest.reserve(elements.size() - 1);
        for (std::size_t i = 0; i < elements.size(); ++i)
            if (i != g)
                rest.push_back(elements[i]);
        for (std::size_t h = 0; h < elements.size(); ++h) {
            if (!in_submonoid(elements[h], rest, limits) ||
                !in_submonoid(gp_neg(elements[h]), rest, limits))
                return std::make_pair(g, h);
        }
    }
    return std::nullopt;
}

bool is_divisor_theory(const GroundSet& ground, const SearchLimits& limits) {
    return !divisor_theory_witness(ground, limits).has_value();
}

// --------------------------------------------------------- refine_chain

namespace {

std::string chain_diag_summary(const RefinementChain& chain) {
    std::ostringstream os;
    os << "steps=" << chain.steps.size();
    for (std::size_t i = 0; i < chain.steps.size(); ++i) {
        const auto& s = chain.steps[i];
        os << "; step " << i << ": |source|=" << s.source.size()
           << " rank=" << s.source_rank << " class_group_rank=" << s.class_group_rank
           << " |target|=" << s.target.size();
        bool flags = false;
        for (std::size_t j = 0; j < s.gcd_ne_min.size(); ++j)
            if (s.gcd_ne_min[j])
                flags = true;
        if (flags)
            os << " gcd!=min";
    }
    return os.str();
}

} // namespace

RefinementChain refine_chain(const GroundSet& ground, unsigned max_steps,
                             const SearchLimits& limits, unsigned extra_steps) {
    RefinementChain chain;
    chain.original = ground;
    auto cond = condense(ground, limits);
    chain.source = cond.ground;
    chain.kept = cond.kept;

    GroundSet cur = chain.source;
    for (unsigned i = 0; i <= max_steps; ++i) {
        if (is_divisor_theory(cur, limits)) {
            for (unsigned extra = 0; extra < extra_steps; ++extra) {
                RefinementStep step = divisor_theory_step(cur, limits);
                cur = step.target;
                chain.steps.push_back(std::move(step));
            }
            chain.final = cur;
            return chain;
        }
        if (i == max_steps)
            break;
        RefinementStep step = divisor_theory_step(cur, limits);
        cur = step.target;
        chain.steps.push_back(std::move(step));
    }
    chain.final = cur;
    throw iteration_cap_error("refinement did not reach a divisor theory within the step cap",
                              chain_diag_summary(chain));
}

Mults apply_chain(const RefinementChain& chain, const Mults& seq_over_original) {
    if (seq_over_original.size() != chain.original.size())
        throw input_error("multiplicity vector does not match the chain source");
    // a zero-sum sequence is a product of atoms, so it is supported on the
    // condensed part
    Mults cur(chain.source.size(), 0);
    {
        std::vector<char> kept(chain.original.size(), 0);
        for (std::size_t i = 0; i < chain.kept.size(); ++i) {
            kept[chain.kept[i]] = 1;
            cur[i] = seq_over_original[chain.kept[i]];
        }
        for (std::size_t i = 0; i < seq_over_original.size(); ++i)
            if (seq_over_original[i] && !kept[i])
                throw input_error("zero-sum sequence supported outside the condensed ground set");
    }
    for (const auto& step : chain.steps)
        cur = apply_beta(step, cur);
    return cur;
}

// ------------------------------------------------------ verify_transfer

namespace {

// all componentwise-below vectors of seq that are zero-sum
std::vector<Mults> zero_sum_subsequences(const GroundSet& ground, const Mults& seq) {
    std::vector<Mults> out;
    Mults cur(seq.size(), 0);
    std::size_t idx = 0;
    // iterative odometer over the box [0, seq]
    while (true) {
        if (is_zero(seq_sum(ground, cur)))
            out.push_back(cur);
        idx = 0;
        while (idx < seq.size() && cur[idx] == seq[idx])
            cur[idx++] = 0;
        if (idx == seq.size())
            break;
        ++cur[idx];
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string mults_to_string(const Mults& m) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < m.size(); ++i)
        os << (i ? "," : "") << m[i];
    os << ']';
    return os.str();
}

} // namespace

TransferReport verify_transfer(const RefinementChain& chain, std::uint64_t maxlen,
                               const SearchLimits& limits) {
    TransferReport report;
    auto src_atoms = atoms_of(chain.source, limits);
    auto dst_atoms = atoms_of(chain.final, limits);

    // chains start at the condensed source; lift its sequences to the
    // original index space for apply_chain
    auto lift = [&](const Mults& seq) {
        Mults orig(chain.original.size(), 0);
        for (std::size_t i = 0; i < chain.kept.size(); ++i)
            orig[chain.kept[i]] = seq[i];
        return orig;
    };

    for (const auto& seq : zero_sum_sequences_up_to(chain.source, maxlen)) {
        ++report.sequences_checked;
        const Mults image = apply_chain(chain, lift(seq));

        // (T1): only units map to units
        if (seq_length(image) == 0 && seq_length(seq) != 0)
            report.violations.push_back({"unit", seq, "nonempty sequence maps to the unit"});

        // length sets transfer exactly
        const LengthSet ls = length_set(*src_atoms, seq);
        const LengthSet lt = length_set(*dst_atoms, image);
        if (ls != lt)
            report.violations.push_back(
                {"lengths", seq, "L(B) != L(theta* B) for image " + mults_to_string(image)});

        // (T2): every 2-splitting of the image lifts
        const auto down = zero_sum_subsequences(chain.source, seq);
        std::set<Mults> reachable;
        for (const auto& v : down)
            reachable.insert(apply_chain(chain, lift(v)));
        for (const auto& b : zero_sum_subsequences(chain.final, image)) {
            if (!reachable.count(b)) {
                report.violations.push_back(
                    {"splitting", seq, "no zero-sum divisor maps to " + mults_to_string(b)});
            }
        }

        // catenary degrees: c(theta* B) <= c(B) <= max(c(theta* B), 2)
        const std::uint64_t cb = catenary_degree(*src_atoms, seq);
        const std::uint64_t ct = catenary_degree(*dst_atoms, image);
        if (!(ct <= cb && cb <= std::max<std::uint64_t>(ct, 2)))
            report.violations.push_back(
                {"catenary", seq,
                 "c(B)=" + std::to_string(cb) + " c(theta* B)=" + std::to_string(ct)});
    }
    return report;
}

// -------------------------------------------------------- example 4.6

bool example_4_6_check(const GroundSet& ground, const std::vector<char>& in_second_part,
                       const SearchLimits& limits) {
    const FgGroup& g = ground.group();
    if (g.torsion_count() != 0 || g.rank() < 2)
        throw input_error("shape violation: the ambient group must be Z^s with s >= 2");
    if (in_second_part.size() != ground.size())
        throw input_error("shape violation: partition size mismatch");
    const long s = g.rank();

    // G2: nonzero with b_2 = -b_1
    for (std::size_t i = 0; i < ground.size(); ++i) {
        if (!in_second_part[i])
            continue;
        const IntVec& b = ground.coords(i);
        bool zero = std::all_of(b.begin(), b.end(), [](const Int& x) { return x == 0; });
        if (zero || b[1] != -b[0])
            throw input_error("shape violation: second part needs nonzero b with b_2 = -b_1");
    }

    // G1: a_v = k_v * a_1 for one rational tuple k with every k_v != -1.
    // Elements with a_1 = 0 must vanish entirely; the first element with
    // a_1 != 0 pins the tuple.
    std::size_t witness = ground.size();
    for (std::size_t i = 0; i < ground.size(); ++i) {
        if (in_second_part[i])
            continue;
        const IntVec& a = ground.coords(i);
        if (a[0] != 0) {
            if (witness == ground.size())
                witness = i;
            const IntVec& w = ground.coords(witness);
            for (long v = 1; v < s; ++v)
                if (a[v] * w[0] != w[v] * a[0])
                    throw input_error("shape violation: first part is not on one line");
        } else {
            for (long v = 1; v < s; ++v)
                if (a[v] != 0)
                    throw input_error("shape violation: first part element off the line family");
        }
    }
    if (witness != ground.size()) {
        const IntVec& w = ground.coords(witness);
        for (long v = 1; v < s; ++v)
            if (w[v] == -w[0]) // k_v = -1
                throw input_error("shape violation: slope -1 is excluded");
    }

    auto atoms = atoms_of(ground, limits);
    for (const auto& atom : atoms->atoms) {
        bool touches_first = false, touches_second = false;
        for (std::size_t i = 0; i < atom.size(); ++i)
            if (atom[i])
                (in_second_part[i] ? touches_second : touches_first) = true;
        if (touches_first && touches_second)
            return false;
    }
    return true;
}

// -------------------------------------------------------- example 4.7

Example47Result example_4_7_transfer(const IntMat& g1, const IntVec& a, const Int& truncation,
                                     const SearchLimits& limits) {
    if (a.size() != 2 || a[0] >= 0 || a[1] >= 0)
        throw input_error("precondition violation: a must have both coordinates negative");
    FgGroup z2(2, {});
    IntMat kept;
    {
        std::set<IntVec> seen;
        for (const auto& v : g1) {
            if (v.size() != 2 || v[0] < 0 || v[1] < 0)
                throw input_error("precondition violation: G1 must lie in N_0^2");
            if (v[0] <= truncation && v[1] <= truncation && seen.insert(v).second)
                kept.push_back(v);
        }
    }
    if (kept.empty())
        throw input_error("precondition violation: truncated G1 is empty");

    // <G1> and the rank-1 intersection <G1> meet Z a
    SubgroupBasis lattice = subgroup_from_vectors(z2, kept);
    SubgroupBasis full = subgroup_from(z2, z2.standard_generators());
    QuotientMap mod_lattice = quotient_structure(full, lattice);
    Int m0 = order_of(mod_lattice.project(z2.element(a))); // 0 when t*a never enters <G1>
    IntMat inter_gens;
    if (m0 != 0)
        inter_gens.push_back({m0 * a[0], m0 * a[1]});
    SubgroupBasis inter = subgroup_from_vectors(z2, inter_gens);

    QuotientMap to_gamma = quotient_structure(lattice, inter);
    Example47Result res;
    res.gamma = to_gamma.quotient;
    res.gamma_is_z = (res.gamma == FgGroup(1, {}));

    std::vector<GroupElement> image_elems;
    {
        std::set<IntVec> distinct;
        for (const auto& v : kept) {
            GroupElement e = to_gamma.project_vector(v);
            if (distinct.insert(e.coords()).second)
                image_elems.push_back(e);
        }
    }

    // cofinality of the truncation: the images generate Gamma as a monoid
    res.condensed = true;
    for (const auto& e : image_elems)
        if (!in_submonoid(gp_neg(e), image_elems, limits)) {
            res.condensed = false;
            break;
        }

    if (res.gamma_is_z) {
        std::set<Int> vals;
        for (const auto& e : image_elems)
            vals.insert(e.coords()[0]);
        // the projection is canonical only up to sign; lean the image set
        // toward the nonpositive side
        Int lo = *vals.begin(), hi = *vals.rbegin();
        const bool flip = (lo + hi) > 0;
        for (const auto& v : vals)
            res.images.push_back(flip ? Int(-v) : v);
        std::sort(res.images.begin(), res.images.end());
    }
    return res;
}

} // namespace zsm

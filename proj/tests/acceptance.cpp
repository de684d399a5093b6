// Acceptance suite: exercises the contract end to end and prints one
// PASS/FAIL line per criterion. Exits nonzero when anything fails.

#include <array>
#include <chrono>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "zsm/factorization.hpp"
#include "zsm/json_io.hpp"
#include "zsm/parallel.hpp"
#include "zsm/refine.hpp"

using namespace zsm;
using namespace zsm::testing;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

GroundSet gs(const FgGroup& g, std::vector<std::vector<long>> elems) {
    IntMat coords;
    for (const auto& e : elems) {
        IntVec v;
        for (long x : e)
            v.push_back(Int(x));
        coords.push_back(std::move(v));
    }
    return GroundSet(g, std::move(coords));
}

GroundSet random_condensed(TestRng& rng, const FgGroup& g, std::size_t max_size,
                           long coord_bound) {
    for (;;) {
        auto cond = condense(random_ground_set(rng, g, max_size, coord_bound));
        if (cond.ground.size() > 0)
            return cond.ground;
    }
}

struct SuiteResult {
    std::array<bool, 10> pass{};
    std::array<std::string, 10> detail;
    std::string transcript;
};

void note(SuiteResult& r, int criterion, bool ok, const std::string& msg) {
    r.pass[criterion - 1] = ok;
    r.detail[criterion - 1] = msg;
}

// all instance generation is seeded; the shift comes from --seed (default 0)
std::uint32_t g_seed_shift = 0;

SuiteResult run_suite(unsigned workers) {
    SuiteResult res;
    set_worker_count(workers);
    clear_atom_memo();
    std::ostringstream log;

    // ---- 1. atom oracle equivalence on 25 seeded ground sets
    {
        auto t0 = Clock::now();
        const std::vector<FgGroup> catalog{FgGroup(1, {}), FgGroup(2, {}), FgGroup(0, {Int(6)}),
                                           FgGroup(0, {Int(2), Int(4)}), FgGroup(1, {Int(2)})};
        TestRng rng(1001 + g_seed_shift);
        int mismatches = 0, instances = 0;
        for (const auto& g : catalog) {
            for (int trial = 0; trial < 5; ++trial) {
                GroundSet ground = random_ground_set(rng, g, 4, 3);
                auto atoms = atoms_of(ground);
                log << "c1 " << ground.canonical_key() << " -> "
                    << atoms_to_json(*atoms)["atoms"].dump() << "\n";
                std::vector<Mults> low;
                for (const auto& a : atoms->atoms)
                    if (seq_length(a) <= 12)
                        low.push_back(a);
                if (low != naive_minimal_solutions(ground, 12))
                    ++mismatches;
                ++instances;
            }
        }
        const double dt = seconds_since(t0);
        note(res, 1, mismatches == 0 && instances == 25 && dt < 60.0,
             "atoms vs naive degree-12 filter on 25 seeded ground sets, " +
                 std::to_string(dt).substr(0, 5) + "s");
    }

    // ---- 2. the symmetric interval is a divisor theory
    {
        auto t0 = Clock::now();
        FgGroup z(1, {});
        GroundSet ground = gs(z, {{-2}, {-1}, {0}, {1}, {2}});
        bool dt = is_divisor_theory(ground);
        const double secs = seconds_since(t0);
        log << "c2 divisor_theory=" << dt << "\n";
        note(res, 2, dt && secs < 1.0,
             "{-2e,-e,0,e,2e} in Z is a divisor theory, " + std::to_string(secs).substr(0, 5) +
                 "s");
    }

    // ---- 3 & 4. transfer of lengths and catenary bounds on seeded chains
    std::vector<RefinementChain> kept_chains;
    {
        const std::vector<FgGroup> catalog{FgGroup(0, {Int(5)}), FgGroup(0, {Int(6)}),
                                           FgGroup(1, {Int(2)})};
        TestRng rng(3003 + g_seed_shift);
        int length_viol = 0, catenary_viol = 0, other_viol = 0, failures = 0;
        for (int i = 0; i < 10; ++i) {
            GroundSet ground = random_condensed(rng, catalog[i % catalog.size()], 4, 2);
            try {
                auto chain = refine_chain(ground, 32);
                auto report = verify_transfer(chain, 10);
                log << "c3 " << chain_to_json(chain).dump() << " "
                    << transfer_report_to_json(report).dump() << "\n";
                for (const auto& v : report.violations) {
                    if (v.kind == "lengths")
                        ++length_viol;
                    else if (v.kind == "catenary")
                        ++catenary_viol;
                    else
                        ++other_viol;
                }
                kept_chains.push_back(std::move(chain));
            } catch (const iteration_cap_error&) {
                ++failures;
            }
        }
        note(res, 3, failures == 0 && length_viol == 0 && other_viol == 0,
             "10 seeded chains terminate and preserve every L(B), |B| <= 10");
        note(res, 4, failures == 0 && catenary_viol == 0,
             "c(theta* B) <= c(B) <= max(c(theta* B), 2) elementwise");
    }

    // ---- 5. the worked C4 chain
    {
        FgGroup c4(0, {Int(4)});
        GroundSet ground = gs(c4, {{1}, {2}});
        auto chain = refine_chain(ground, 32);
        auto report = verify_transfer(chain, 10);
        auto atoms = atoms_of(ground);
        bool singletons = true;
        for (const auto& seq : zero_sum_sequences_up_to(ground, 10))
            if (length_set(*atoms, seq).size() != 1)
                singletons = false;
        bool ok = chain.steps.size() == 2 &&
                  chain.steps[0].class_group == FgGroup(0, {Int(2)}) &&
                  chain.final.group().is_trivial() && chain.final.size() == 1 &&
                  is_zero(chain.final.element(0)) && report.passed() && singletons;
        log << "c5 " << chain_to_json(chain).dump() << " "
            << transfer_report_to_json(report).dump() << "\n";
        note(res, 5, ok, "{1,2} in C4: 2 steps via Z/2 to {0}, half-factorial, transfer checks");
        kept_chains.push_back(std::move(chain));
    }

    // ---- 6. divisor theory iff trivial exponents, over finite groups
    {
        const std::vector<FgGroup> catalog{FgGroup(0, {Int(5)}), FgGroup(0, {Int(6)}),
                                           FgGroup(0, {Int(2), Int(4)})};
        TestRng rng(6006 + g_seed_shift);
        int counterexamples = 0, instances = 0;
        while (instances < 50) {
            GroundSet ground = random_condensed(rng, catalog[instances % catalog.size()], 4, 2);
            auto atoms = atoms_of(ground);
            auto pc = classify_primes(*atoms);
            bool all_singleton_minimal = pc.minimal_classes.size() == pc.classes.size();
            for (const auto& cls : pc.classes)
                if (cls.size() != 1)
                    all_singleton_minimal = false;
            bool all_e_one = true;
            for (std::size_t i = 0; i < ground.size(); ++i)
                if (exponent_e(*atoms, i).gcd != 1)
                    all_e_one = false;
            const bool dt = is_divisor_theory(ground);
            log << "c6 " << ground.canonical_key() << " dt=" << dt << " e1=" << all_e_one
                << " sm=" << all_singleton_minimal << "\n";
            if (dt != (all_singleton_minimal && all_e_one))
                ++counterexamples;
            ++instances;
        }
        note(res, 6, counterexamples == 0,
             "50 seeded finite instances: divisor theory iff all e=1 on singleton minimal classes");
    }

    // ---- 7. infinite cyclic transfer, truncation 30
    {
        auto t0 = Clock::now();
        IntMat g1;
        for (long m = 0; m * m <= 30; ++m)
            for (long n = m * m; n <= 30; ++n)
                g1.push_back({Int(m), Int(n)});
        auto r = example_4_7_transfer(g1, {Int(-1), Int(-2)}, Int(30));
        std::vector<Int> expected;
        for (long k = -30; k <= 1; ++k)
            expected.push_back(Int(k));
        const double secs = seconds_since(t0);
        bool ok = r.gamma_is_z && r.condensed && r.images == expected && secs < 5.0;
        log << "c7 gamma=" << group_to_json(r.gamma).dump() << " images=[";
        for (const auto& v : r.images)
            log << v << ",";
        log << "]\n";
        note(res, 7, ok,
             "truncated parabola family maps onto {1} u {0,...,-30}, " +
                 std::to_string(secs).substr(0, 5) + "s");
    }

    // ---- 8. inner direct products on seeded line/antidiagonal instances
    {
        TestRng rng(8008 + g_seed_shift);
        FgGroup z2(2, {});
        const long slopes[] = {0, 1, 2, 3, -2, 5};
        int violations = 0;
        for (int inst = 0; inst < 10; ++inst) {
            const long k2 = slopes[rng.next(6)];
            std::set<long> ts, cs;
            const std::size_t n1 = 1 + rng.next(2), n2 = 1 + rng.next(2);
            while (ts.size() < n1) {
                long t = rng.next_in(-3, 3);
                if (t != 0)
                    ts.insert(t);
            }
            while (cs.size() < n2) {
                long c = rng.next_in(-3, 3);
                if (c != 0)
                    cs.insert(c);
            }
            IntMat coords;
            std::vector<char> split;
            for (long t : ts) {
                coords.push_back({Int(t), Int(t * k2)});
                split.push_back(0);
            }
            for (long c : cs) {
                coords.push_back({Int(c), Int(-c)});
                split.push_back(1);
            }
            GroundSet ground(z2, std::move(coords));
            const bool ok = example_4_6_check(ground, split);
            log << "c8 " << ground.canonical_key() << " split_ok=" << ok << "\n";
            if (!ok)
                ++violations;
        }
        note(res, 8, violations == 0, "10 seeded split instances: every atom stays in its part");
    }

    // ---- 9. rank monotonicity and the exponent diagnostic
    {
        bool rank_ok = true, no_minimal_flag = true;
        for (const auto& chain : kept_chains) {
            for (const auto& step : chain.steps) {
                if (step.class_group_rank > step.source_rank)
                    rank_ok = false;
                for (std::size_t i = 0; i < step.element_minimal.size(); ++i)
                    if (step.element_minimal[i] && step.gcd_ne_min[i])
                        no_minimal_flag = false;
            }
        }
        FgGroup z2(2, {});
        auto bundled = divisor_theory_step(gs(z2, {{1, 0}, {-2, 0}, {-3, 0}}));
        bool fires = bundled.gcd_ne_min[0] == 1 && bundled.element_minimal[0] == 0;
        for (std::size_t i = 0; i < bundled.element_minimal.size(); ++i)
            if (bundled.element_minimal[i] && bundled.gcd_ne_min[i])
                no_minimal_flag = false;
        if (bundled.class_group_rank > bundled.source_rank)
            rank_ok = false;
        log << "c9 rank_ok=" << rank_ok << " fires=" << fires
            << " clean_minimal=" << no_minimal_flag << "\n";
        note(res, 9, rank_ok && fires && no_minimal_flag,
             "class-group rank never exceeds the source rank; gcd!=min fires only off-minimal");
    }

    res.transcript = log.str();
    return res;
}

} // namespace

int main(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        if (std::string(argv[i]) == "--seed" && i + 1 < argc) {
            g_seed_shift = static_cast<std::uint32_t>(std::stoul(argv[i + 1]));
            ++i;
        }
    }

    SuiteResult first = run_suite(1);
    SuiteResult second = run_suite(8);

    bool all = true;
    for (int c = 1; c <= 9; ++c) {
        const bool ok = first.pass[c - 1] && second.pass[c - 1];
        all = all && ok;
        std::cout << "criterion " << c << ": " << (ok ? "PASS" : "FAIL") << ": "
                  << first.detail[c - 1] << "\n";
    }
    const bool deterministic = first.transcript == second.transcript;
    all = all && deterministic;
    std::cout << "criterion 10: " << (deterministic ? "PASS" : "FAIL")
              << ": byte-identical transcripts for worker counts 1 and 8 ("
              << first.transcript.size() << " bytes)\n";
    std::cout << (all ? "ACCEPTANCE: PASS" : "ACCEPTANCE: FAIL") << "\n";
    return all ? 0 : 1;
}

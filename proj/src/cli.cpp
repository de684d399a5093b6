#include "zsm/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "zsm/cache.hpp"
#include "zsm/factorization.hpp"
#include "zsm/json_io.hpp"
#include "zsm/parallel.hpp"
#include "zsm/refine.hpp"
#include "zsm/version.hpp"

namespace zsm::cli {

namespace {

struct JobSpec {
    GroundSet ground;
    std::optional<std::uint64_t> budget;
    std::optional<std::uint64_t> max_length;
    std::optional<unsigned> max_steps;
    std::optional<std::uint64_t> verify_bound;
    std::optional<std::string> cache_dir;
};

JobSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw input_error("cannot open spec file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw input_error(std::string("spec file is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw input_error("spec file: expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        if (k != "ground" && k != "budget" && k != "max_length" && k != "max_steps" &&
            k != "verify_bound" && k != "cache_dir")
            throw input_error("spec file: unknown field '" + k + "'");
    }
    if (!j.contains("ground"))
        throw input_error("spec file: 'ground' is required");
    JobSpec spec{ground_from_json(j["ground"]), {}, {}, {}, {}, {}};
    auto uint_field = [&](const char* name) -> std::optional<std::uint64_t> {
        if (!j.contains(name))
            return std::nullopt;
        if (!j[name].is_number_integer() || j[name].get<long long>() < 0)
            throw input_error(std::string("spec file: '") + name +
                              "' must be a nonnegative integer");
        return j[name].get<std::uint64_t>();
    };
    spec.budget = uint_field("budget");
    spec.max_length = uint_field("max_length");
    if (auto ms = uint_field("max_steps"))
        spec.max_steps = static_cast<unsigned>(*ms);
    spec.verify_bound = uint_field("verify_bound");
    if (j.contains("cache_dir")) {
        if (!j["cache_dir"].is_string())
            throw input_error("spec file: 'cache_dir' must be a string");
        spec.cache_dir = j["cache_dir"].get<std::string>();
    }
    return spec;
}

struct CommonOpts {
    std::string spec_path;
    unsigned workers = 1;
    std::uint64_t budget = SearchLimits{}.max_nodes;
    bool budget_set = false;
    std::string cache_dir;
    bool no_cache = false;
};

std::optional<AtomCache> resolve_cache(const CommonOpts& opts, const JobSpec& spec) {
    if (opts.no_cache)
        return std::nullopt;
    std::string dir = opts.cache_dir;
    if (dir.empty() && spec.cache_dir)
        dir = *spec.cache_dir;
    if (dir.empty())
        if (const char* env = std::getenv("ZSM_CACHE_DIR"))
            dir = env;
    if (dir.empty())
        if (const char* home = std::getenv("HOME"))
            dir = std::string(home) + "/.cache/zsm";
    if (dir.empty())
        return std::nullopt;
    return AtomCache(dir);
}

/// Atom lookup through the disk cache; hits are re-validated and fed into
/// the in-process memo so later calls see them.
std::shared_ptr<const AtomSet> cached_atoms(const GroundSet& ground, const SearchLimits& limits,
                                            const std::optional<AtomCache>& cache,
                                            std::ostream& err) {
    if (cache) {
        if (auto hit = cache->load(ground)) {
            err << "cache hit: " << AtomCache::key_of(ground) << "\n";
            memoize_atoms(*hit);
            return atoms_of(ground, limits);
        }
    }
    auto atoms = atoms_of(ground, limits);
    if (cache) {
        cache->store(*atoms);
        err << "cache store: " << AtomCache::key_of(ground) << "\n";
    }
    return atoms;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

int cmd_atoms(const CommonOpts& opts, std::ostream& out, std::ostream& err) {
    JobSpec spec = load_spec(opts.spec_path);
    SearchLimits limits{opts.budget_set ? opts.budget : spec.budget.value_or(opts.budget)};
    auto cache = resolve_cache(opts, spec);
    auto atoms = cached_atoms(spec.ground, limits, cache, err);
    emit(out, atoms_to_json(*atoms));
    return 0;
}

int cmd_invariants(const CommonOpts& opts, std::uint64_t cli_maxlen, bool maxlen_set,
                   std::ostream& out, std::ostream& err) {
    JobSpec spec = load_spec(opts.spec_path);
    SearchLimits limits{opts.budget_set ? opts.budget : spec.budget.value_or(opts.budget)};
    const std::uint64_t maxlen = maxlen_set ? cli_maxlen : spec.max_length.value_or(0);
    auto cache = resolve_cache(opts, spec);
    auto atoms = cached_atoms(spec.ground, limits, cache, err);

    Json per_element = Json::array();
    for (const auto& seq : zero_sum_sequences_up_to(spec.ground, maxlen)) {
        const auto zs = factorizations(*atoms, seq);
        const auto ls = length_set(*atoms, seq);
        per_element.push_back(Json{{"element", mults_to_json(seq)},
                                   {"lengths", ls},
                                   {"delta", delta_of(ls)},
                                   {"catenary", catenary_degree(*atoms, seq)},
                                   {"num_factorizations", zs.size()}});
    }
    Json report{{"ground", ground_to_json(spec.ground)},
                {"bound", maxlen},
                {"davenport", davenport(*atoms)},
                {"elements", std::move(per_element)},
                {"aggregate", Json{{"delta", delta_bounded(spec.ground, maxlen, limits)},
                                   {"catenary", catenary_bounded(spec.ground, maxlen, limits)}}}};
    emit(out, report);
    return 0;
}

int cmd_check_dt(const CommonOpts& opts, std::ostream& out, std::ostream& err) {
    JobSpec spec = load_spec(opts.spec_path);
    SearchLimits limits{opts.budget_set ? opts.budget : spec.budget.value_or(opts.budget)};
    (void)err;
    auto witness = divisor_theory_witness(spec.ground, limits);
    Json witnesses = Json::array();
    if (witness) {
        witnesses.push_back(
            Json{{"removed", element_to_json(spec.ground.coords(witness->first))},
                 {"element", element_to_json(spec.ground.coords(witness->second))}});
    }
    emit(out, Json{{"divisor_theory", !witness.has_value()}, {"witnesses", std::move(witnesses)}});
    return 0;
}

int cmd_refine(const CommonOpts& opts, unsigned cli_max_steps, bool max_steps_set,
               std::uint64_t cli_verify, bool verify_set, unsigned extra_steps, std::ostream& out,
               std::ostream& err) {
    JobSpec spec = load_spec(opts.spec_path);
    SearchLimits limits{opts.budget_set ? opts.budget : spec.budget.value_or(opts.budget)};
    const unsigned max_steps = max_steps_set ? cli_max_steps : spec.max_steps.value_or(32);
    if (max_steps < 1)
        throw input_error("--max-steps must be at least 1");
    auto cache = resolve_cache(opts, spec);
    cached_atoms(spec.ground, limits, cache, err); // warm the memo for the input set
    RefinementChain chain = refine_chain(spec.ground, max_steps, limits, extra_steps);
    Json j = chain_to_json(chain);
    std::optional<std::uint64_t> verify_bound =
        verify_set ? std::optional<std::uint64_t>(cli_verify) : spec.verify_bound;
    if (verify_bound)
        j["verify_transfer"] = transfer_report_to_json(verify_transfer(chain, *verify_bound, limits));
    emit(out, j);
    return 0;
}

GroundSet remark_3_7_ground(long e) {
    FgGroup z(1, {});
    IntMat coords;
    for (long k : {-2, -1, 0, 1, 2})
        coords.push_back({Int(k * e)});
    return GroundSet(z, std::move(coords));
}

int cmd_examples(const CommonOpts& opts, const std::string& name, long e_scale, long n_trunc,
                 int which_case, std::ostream& out, std::ostream& err) {
    SearchLimits limits{opts.budget};
    (void)err;
    if (name == "remark-3-7") {
        GroundSet ground = remark_3_7_ground(e_scale);
        bool dt = is_divisor_theory(ground, limits);
        emit(out, Json{{"name", name},
                       {"ground", ground_to_json(ground)},
                       {"divisor_theory", dt},
                       {"pass", dt}});
        return 0;
    }
    if (name == "example-4-6") {
        FgGroup z2(2, {});
        GroundSet ground(z2, {{1, 2}, {-1, -2}, {1, -1}, {-2, 2}});
        std::vector<char> split{0, 0, 1, 1};
        bool ok = example_4_6_check(ground, split, limits);
        auto atoms = atoms_of(ground, limits);
        emit(out, Json{{"name", name},
                       {"ground", ground_to_json(ground)},
                       {"split", Json::array({Json::array({0, 1}), Json::array({2, 3})})},
                       {"atoms", atoms_to_json(*atoms)["atoms"]},
                       {"all_atoms_split", ok},
                       {"pass", ok}});
        return 0;
    }
    if (name == "example-4-7") {
        if (n_trunc < 1)
            throw input_error("example-4-7 needs --n >= 1");
        IntMat g1;
        IntVec a;
        if (which_case == 2) {
            for (long m = 0; m * m <= n_trunc; ++m)
                for (long n = m * m; n <= n_trunc; ++n)
                    g1.push_back({Int(m), Int(n)});
            a = {Int(-1), Int(-2)};
        } else if (which_case == 1) {
            for (long m = 0; m <= n_trunc; ++m)
                for (long n = 0; n <= n_trunc; ++n)
                    g1.push_back({Int(m), Int(n)});
            a = {Int(-1), Int(-1)};
        } else {
            throw input_error("example-4-7 --case must be 1 or 2");
        }
        auto res = example_4_7_transfer(g1, a, Int(n_trunc), limits);
        bool pass;
        if (which_case == 2) {
            std::vector<Int> expected;
            for (long k = -n_trunc; k <= 0; ++k)
                expected.push_back(Int(k));
            expected.push_back(Int(1));
            pass = res.gamma_is_z && res.condensed && res.images == expected;
        } else {
            pass = res.gamma.rank() == 1 && res.condensed;
        }
        Json images = Json::array();
        for (const auto& v : res.images)
            images.push_back(int_to_json(v));
        emit(out, Json{{"name", name},
                       {"case", which_case},
                       {"truncation", n_trunc},
                       {"gamma", group_to_json(res.gamma)},
                       {"gamma_is_z", res.gamma_is_z},
                       {"images", std::move(images)},
                       {"condensed", res.condensed},
                       {"pass", pass}});
        return 0;
    }
    throw input_error("unknown example name: " + name);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact arithmetic for monoids of zero-sum sequences"};
    app.set_version_flag("--version", kToolVersion);

    CommonOpts opts;
    auto add_common = [&](CLI::App* cmd, bool needs_spec) {
        if (needs_spec)
            cmd->add_option("--spec", opts.spec_path, "job spec JSON file")->required();
        cmd->add_option("--workers", opts.workers, "worker thread count")
            ->check(CLI::Range(1u, 256u));
        cmd->add_option("--budget", opts.budget, "search node budget")
            ->each([&](const std::string&) { opts.budget_set = true; });
        cmd->add_option("--cache-dir", opts.cache_dir, "atom cache directory");
        cmd->add_flag("--no-cache", opts.no_cache, "disable the disk cache");
    };

    auto* atoms_cmd = app.add_subcommand("atoms", "complete set of minimal zero-sum sequences");
    add_common(atoms_cmd, true);

    std::uint64_t maxlen = 0;
    bool maxlen_set = false;
    auto* inv_cmd = app.add_subcommand("invariants", "bounded arithmetic invariants");
    add_common(inv_cmd, true);
    inv_cmd->add_option("--max-length", maxlen, "sweep bound on sequence length")
        ->each([&](const std::string&) { maxlen_set = true; });

    auto* dt_cmd = app.add_subcommand("check-dt", "divisor-theory criterion with witnesses");
    add_common(dt_cmd, true);

    unsigned max_steps = 32;
    bool max_steps_set = false;
    std::uint64_t verify_bound = 0;
    bool verify_set = false;
    unsigned extra_steps = 0;
    auto* refine_cmd = app.add_subcommand("refine", "iterated block homomorphisms");
    add_common(refine_cmd, true);
    refine_cmd->add_option("--max-steps", max_steps, "refinement step cap")
        ->each([&](const std::string&) { max_steps_set = true; });
    refine_cmd->add_option("--verify-bound", verify_bound, "transfer verification length bound")
        ->each([&](const std::string&) { verify_set = true; });
    refine_cmd->add_option("--extra-steps", extra_steps,
                           "keep iterating past the first divisor theory");

    std::string example_name;
    long e_scale = 1, n_trunc = 30;
    int which_case = 2;
    auto* ex_cmd = app.add_subcommand("examples", "bundled worked scenarios");
    add_common(ex_cmd, false);
    ex_cmd->add_option("--name", example_name, "remark-3-7 | example-4-6 | example-4-7")
        ->required();
    ex_cmd->add_option("--e", e_scale, "generator scale for remark-3-7");
    ex_cmd->add_option("--n", n_trunc, "truncation for example-4-7");
    ex_cmd->add_option("--case", which_case, "special case for example-4-7 (1 or 2)");

    app.require_subcommand(1);

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        set_worker_count(opts.workers);
        if (atoms_cmd->parsed())
            return cmd_atoms(opts, out, err);
        if (inv_cmd->parsed())
            return cmd_invariants(opts, maxlen, maxlen_set, out, err);
        if (dt_cmd->parsed())
            return cmd_check_dt(opts, out, err);
        if (refine_cmd->parsed())
            return cmd_refine(opts, max_steps, max_steps_set, verify_bound, verify_set,
                              extra_steps, out, err);
        if (ex_cmd->parsed())
            return cmd_examples(opts, example_name, e_scale, n_trunc, which_case, out, err);
        err << "error: no subcommand\n";
        return 2;
    } catch (const input_error& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const resource_limit_error& e) {
        err << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const iteration_cap_error& e) {
        err << "iteration cap: " << e.what() << "\ndiagnostics: " << e.diagnostics() << "\n";
        return 4;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace zsm::cli

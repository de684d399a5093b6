#include "zsm/json_io.hpp"

#include <limits>

namespace zsm {

namespace {

void require_keys(const Json& j, std::initializer_list<const char*> allowed,
                  const char* what) {
    if (!j.is_object())
        throw input_error(std::string(what) + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k)
                ok = true;
        if (!ok)
            throw input_error(std::string(what) + ": unknown field '" + it.key() + "'");
    }
}

} // namespace

Json int_to_json(const Int& v) {
    if (v.fits_slong_p())
        return Json(static_cast<long long>(v.get_si()));
    return Json(v.get_str());
}

Int int_from_json(const Json& j) {
    if (j.is_number_integer())
        return Int(static_cast<long>(j.get<long long>()));
    if (j.is_string())
        return Int(j.get<std::string>());
    throw input_error("expected an integer (number or decimal string)");
}

Json group_to_json(const FgGroup& g) {
    Json t = Json::array();
    for (const auto& n : g.torsion())
        t.push_back(int_to_json(n));
    return Json{{"rank", g.rank()}, {"torsion", std::move(t)}};
}

FgGroup group_from_json(const Json& j) {
    require_keys(j, {"rank", "torsion"}, "group");
    if (!j.contains("rank") || !j.contains("torsion"))
        throw input_error("group: 'rank' and 'torsion' are required");
    if (!j["rank"].is_number_integer() || j["rank"].get<long long>() < 0)
        throw input_error("group: 'rank' must be a nonnegative integer");
    if (!j["torsion"].is_array())
        throw input_error("group: 'torsion' must be an array");
    IntVec torsion;
    for (const auto& n : j["torsion"])
        torsion.push_back(int_from_json(n));
    return FgGroup(static_cast<long>(j["rank"].get<long long>()), std::move(torsion));
}

Json element_to_json(const IntVec& coords) {
    Json a = Json::array();
    for (const auto& c : coords)
        a.push_back(int_to_json(c));
    return a;
}

IntVec element_from_json(const FgGroup& g, const Json& j) {
    if (!j.is_array() || static_cast<long>(j.size()) != g.dim())
        throw input_error("element: expected a flat array of length rank + torsion count");
    IntVec coords;
    for (const auto& c : j)
        coords.push_back(int_from_json(c));
    return g.element(std::move(coords)).coords();
}

Json ground_to_json(const GroundSet& g) {
    Json els = Json::array();
    for (std::size_t i = 0; i < g.size(); ++i)
        els.push_back(element_to_json(g.coords(i)));
    return Json{{"group", group_to_json(g.group())}, {"elements", std::move(els)}};
}

GroundSet ground_from_json(const Json& j) {
    require_keys(j, {"group", "elements"}, "ground set");
    if (!j.contains("group") || !j.contains("elements"))
        throw input_error("ground set: 'group' and 'elements' are required");
    FgGroup g = group_from_json(j["group"]);
    if (!j["elements"].is_array())
        throw input_error("ground set: 'elements' must be an array");
    IntMat coords;
    for (const auto& e : j["elements"])
        coords.push_back(element_from_json(g, e));
    return GroundSet(std::move(g), std::move(coords));
}

Json mults_to_json(const Mults& m) {
    Json a = Json::array();
    for (auto v : m)
        a.push_back(v);
    return a;
}

Mults mults_from_json(const Json& j, std::size_t expected_size) {
    if (!j.is_array() || j.size() != expected_size)
        throw input_error("multiplicity vector has the wrong length");
    Mults m;
    for (const auto& v : j) {
        if (!v.is_number_integer() || v.get<long long>() < 0 ||
            v.get<long long>() > std::numeric_limits<std::uint32_t>::max())
            throw input_error("multiplicities must be small nonnegative integers");
        m.push_back(static_cast<std::uint32_t>(v.get<long long>()));
    }
    return m;
}

Json atoms_to_json(const AtomSet& a) {
    Json atoms = Json::array();
    for (const auto& atom : a.atoms)
        atoms.push_back(mults_to_json(atom));
    return Json{{"ground", ground_to_json(a.ground)}, {"atoms", std::move(atoms)}};
}

AtomSet atoms_from_json(const Json& j) {
    require_keys(j, {"ground", "atoms"}, "atom set");
    if (!j.contains("ground") || !j.contains("atoms"))
        throw input_error("atom set: 'ground' and 'atoms' are required");
    AtomSet as;
    as.ground = ground_from_json(j["ground"]);
    if (!j["atoms"].is_array())
        throw input_error("atom set: 'atoms' must be an array");
    for (const auto& atom : j["atoms"]) {
        Mults m = mults_from_json(atom, as.ground.size());
        if (!is_zero(seq_sum(as.ground, m)))
            throw input_error("atom set: stored atom is not zero-sum");
        if (!as.atoms.empty() && !(as.atoms.back() < m))
            throw input_error("atom set: atoms are not in canonical order");
        as.atoms.push_back(std::move(m));
    }
    as.element_atoms.assign(as.ground.size(), {});
    for (std::size_t jx = 0; jx < as.atoms.size(); ++jx)
        for (std::size_t i = 0; i < as.ground.size(); ++i)
            if (as.atoms[jx][i])
                as.element_atoms[i].push_back(jx);
    return as;
}

Json step_to_json(const RefinementStep& s) {
    Json classes = Json::array();
    for (const auto& c : s.classification.classes)
        classes.push_back(c);
    Json minimal = Json::array();
    for (std::size_t q = 0; q < s.classification.minimal_classes.size(); ++q) {
        minimal.push_back(Json{{"class", s.classification.minimal_classes[q]},
                               {"representative", s.classification.rep[q]},
                               {"e", s.classification.exponent[q].gcd},
                               {"min_valuation", s.classification.exponent[q].min},
                               {"target", s.target_index[q]}});
    }
    Json exponents = Json::array();
    for (std::size_t i = 0; i < s.element_exponent.size(); ++i) {
        exponents.push_back(Json{{"index", i},
                                 {"gcd", s.element_exponent[i].gcd},
                                 {"min", s.element_exponent[i].min},
                                 {"minimal", static_cast<bool>(s.element_minimal[i])},
                                 {"gcd_ne_min", static_cast<bool>(s.gcd_ne_min[i])}});
    }
    Json merges = Json::array();
    for (const auto& m : s.merges)
        merges.push_back(m);
    return Json{{"source", ground_to_json(s.source)},
                {"support_classes", std::move(classes)},
                {"minimal_classes", std::move(minimal)},
                {"class_group", group_to_json(s.class_group)},
                {"target", ground_to_json(s.target)},
                {"index_map", s.target_index},
                {"diagnostics",
                 Json{{"source_rank", s.source_rank},
                      {"class_group_rank", s.class_group_rank},
                      {"element_exponents", std::move(exponents)},
                      {"merges", std::move(merges)}}}};
}

Json chain_to_json(const RefinementChain& c) {
    Json steps = Json::array();
    for (const auto& s : c.steps)
        steps.push_back(step_to_json(s));
    Json dropped = Json::array();
    {
        std::vector<char> kept(c.original.size(), 0);
        for (auto i : c.kept)
            kept[i] = 1;
        for (std::size_t i = 0; i < c.original.size(); ++i)
            if (!kept[i])
                dropped.push_back(i);
    }
    return Json{{"source", ground_to_json(c.original)},
                {"condensed", ground_to_json(c.source)},
                {"condense_dropped", std::move(dropped)},
                {"steps", std::move(steps)},
                {"final", ground_to_json(c.final)},
                {"num_steps", c.steps.size()}};
}

Json transfer_report_to_json(const TransferReport& r) {
    Json v = Json::array();
    for (const auto& viol : r.violations)
        v.push_back(Json{{"kind", viol.kind},
                         {"sequence", mults_to_json(viol.seq)},
                         {"detail", viol.detail}});
    return Json{{"sequences_checked", r.sequences_checked},
                {"violations", std::move(v)},
                {"passed", r.passed()}};
}

} // namespace zsm

#pragma once

#include <json.hpp>

#include "zsm/refine.hpp"
#include "zsm/zerosum.hpp"

namespace zsm {

using Json = nlohmann::json;

/// Wire contracts. Groups are {"rank": r, "torsion": [n1,...,nk]}; elements
/// are flat integer arrays, free coordinates first. Integers ride as JSON
/// numbers while they fit in 64 bits and as decimal strings beyond that.
/// Parsers validate shapes and reject unknown fields.

Json int_to_json(const Int& v);
Int int_from_json(const Json& j);

Json group_to_json(const FgGroup& g);
FgGroup group_from_json(const Json& j);

Json element_to_json(const IntVec& coords);
IntVec element_from_json(const FgGroup& g, const Json& j);

Json ground_to_json(const GroundSet& g);
GroundSet ground_from_json(const Json& j);

Json atoms_to_json(const AtomSet& a);
/// Parses and revalidates: every atom must be zero-sum over the ground set.
AtomSet atoms_from_json(const Json& j);

Json mults_to_json(const Mults& m);
Mults mults_from_json(const Json& j, std::size_t expected_size);

Json step_to_json(const RefinementStep& s);
Json chain_to_json(const RefinementChain& c);
Json transfer_report_to_json(const TransferReport& r);

} // namespace zsm

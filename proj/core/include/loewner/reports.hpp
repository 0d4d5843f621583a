#pragma once

#include <string>

#include "loewner/chains.hpp"
#include "loewner/fields.hpp"
#include "loewner/flow.hpp"
#include "loewner/operators.hpp"
#include "loewner/range.hpp"
#include "loewner/serialization.hpp"
#include "loewner/shapes.hpp"

namespace loewner::io {

Json to_json(const IntegratorConfig& cfg);
Json to_json(const FlowResult& r);
Json to_json(const BetaProbe& p);
Json to_json(const RangeReport& r);
Json to_json(const CertificationReport& r);
Json to_json(const DissipativityReport& r);
Json to_json(const WeakBoundReport& r);
Json to_json(const EvolutionReport& r);
Json to_json(const ResidualReport& r);
Json to_json(const ArgHypothesisReport& r);
Json to_json(const SpiralChainReport& r);
Json to_json(const MembershipOracleReport& r);
Json to_json(const InverseConvergenceReport& r);

/// {"chain": <field spec on UnitDisc>, "horizon": T, "target_dimension": n}
Json to_json(const LiftedChainSpec& lift);
LiftedChainSpec lifted_chain_from_json(const Json& j, const IntegratorConfig& cfg, const std::string& path = "");

/// Disc map {"kind": identity|koebe|half_plane|polynomial, "coeffs": [...], "scale": c}.
DiscMap disc_map_from_json(const Json& j, const std::string& path);

/// {"map": <disc map>, "A": scalar or matrix, "extension": {"kind": "roper_suffridge", "dimension": n}}
/// or {"map": {"kind": "identity", "dimension": n}, ...}.
MapUnderTest map_from_json(const Json& j, const std::string& path = "");

}  // namespace loewner::io

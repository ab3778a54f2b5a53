#pragma once

#include "selmer/bklpr.hpp"
#include "selmer/eigendist.hpp"
#include "selmer/hurwitz.hpp"
#include "selmer/topology.hpp"

#include "json.hpp"

namespace selmer {

using json = nlohmann::ordered_json;

// Exact values travel as strings: integers in decimal, rationals as "p/q".
json to_json(const BigInt& x);
json to_json(const Rational& x);
json to_json(const FiniteModule& m);
FiniteModule module_from_json(const json& j);
json to_json(const ModuleDistribution& d);
ModuleDistribution distribution_from_json(const json& j);
json to_json(const RationalPoly& p);
json to_json(const ModMatrix& m);
json to_json(const AspElement& e);
json to_json(const NielsenDatum& d);
json to_json(const OrbitReport& r);
json to_json(const TorsorCount& t);
json to_json(const CosetIdentityReport& r);
json to_json(const GradedOrbitRing& ring);  // basis sizes and orbit sizes
json to_json(const UOperator& U);
json to_json(const StabilizationReport& r);
json to_json(const KComplexReport& r);

}  // namespace selmer

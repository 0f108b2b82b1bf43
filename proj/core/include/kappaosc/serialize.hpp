#pragma once

#include <string>

#include <json.hpp>

#include "kappaosc/clusters.hpp"
#include "kappaosc/flip.hpp"
#include "kappaosc/osc_algebra.hpp"
#include "kappaosc/shell_solver.hpp"
#include "kappaosc/star_product.hpp"

namespace kappaosc {

using Json = nlohmann::ordered_json;

// Report serialization with stable field order; numbers round-trip exactly.

Json json_of(const Vec3& v);
Json json_of(const FourMomentum& p);
Json json_of(const OscFactor& f);
Json json_of(const Monomial& m);
Json json_of(const TermSum& sum);
Json json_of(const ShellSolution& sol);
Json json_of(const FlipResult& r);
Json json_of(const EquivalenceReport& r);
Json json_of(const NonAssociativityReport& r);
Json json_of(const StarEquivalenceReport& r);

/// Rows "i,j,re,im" with a header line.
std::string amplitude_to_csv(const Amplitude2& a);
Amplitude2 amplitude_from_csv(const std::string& text);

Json amplitude_to_json(const Amplitude2& a);
Amplitude2 amplitude_from_json(const Json& j);

}  // namespace kappaosc

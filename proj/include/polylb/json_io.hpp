#pragma once

#include <json.hpp>

#include "polylb/bounds.hpp"
#include "polylb/children.hpp"
#include "polylb/oracle.hpp"
#include "polylb/peano.hpp"
#include "polylb/refine2d.hpp"

namespace polylb {

using Json = nlohmann::ordered_json;

// Sets are written as {"parts": [[lo, hi], ...]}; measures as {"uniform": set} or
// {"atoms": [[x, w], ...]}; polynomials as ascending coefficient arrays.

Json to_json(const Interval& i);
Json to_json(const RealSet& s);
Json to_json(const Polynomial& p);
Json to_json(const ProbMeasure& mu);
Json to_json(const LengthResult& r);
Json to_json(const EllEstimate& e);
Json to_json(const ChildrenDecomposition& d);
Json to_json(const ChildrenTree& t);
Json to_json(const Certificate& c);
Json to_json(const ValidationReport& r);
Json to_json(const CounterexampleReport& r);
Json to_json(const PlaneRegion& r);
Json to_json(const RefinementResult& r);
Json to_json(const IntestReport& r);

Interval interval_from_json(const Json& j);
/// Accepts [[lo, hi], ...] or {"parts": [[lo, hi], ...]}.
RealSet realset_from_json(const Json& j);
Polynomial polynomial_from_json(const Json& j);
/// Accepts {"uniform": set}, {"atoms": [[x, w], ...]}, a bare set
/// (uniform on it) or an object holding one of these under "measure".
ProbMeasure measure_from_json(const Json& j);
Certificate certificate_from_json(const Json& j);
PlaneRegion plane_region_from_json(const Json& j);

}  // namespace polylb

#pragma once

// JSON serialization of the library's domain objects. Complex numbers are
// two-element arrays [re, im]; all schemas are round-trippable where a
// reader exists.

#include <string_view>

#include <json.hpp>

#include "wkb/borel.hpp"
#include "wkb/oracle.hpp"
#include "wkb/path.hpp"
#include "wkb/potential.hpp"
#include "wkb/series.hpp"
#include "wkb/stokes.hpp"
#include "wkb/types.hpp"
#include "wkb/verify.hpp"

namespace wkb {

using json = nlohmann::ordered_json;

json cplx_json(cplx z);
cplx cplx_from_json(const json& j);

/// Parses "re" or "re,im" (command-line complex convention).
cplx parse_cplx(std::string_view text);

json polynomial_json(const Polynomial& p);
Polynomial polynomial_from_json(const json& j);

json path_json(const OrientedPath& p);
OrientedPath path_from_json(const json& j);

json series_json(const AsymptoticSeries& s);
AsymptoticSeries series_from_json(const json& j);

json graph_json(const StokesGraph& g);
json pade_json(const PadeApproximant& p);
json forecast_json(const SingularityForecast& f);
json connection_json(const ConnectionData& c);
json eigen_json(const std::vector<EigenResult>& levels);
json lemma3_json(const Lemma3Report& r);
json suite_json(const SuiteReport& r);

}  // namespace wkb

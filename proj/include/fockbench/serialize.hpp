#pragma once

#include <json.hpp>

#include "fockbench/bogoljubov.hpp"
#include "fockbench/fock.hpp"
#include "fockbench/spectra.hpp"
#include "fockbench/torus.hpp"
#include "fockbench/wick.hpp"

namespace fockbench {

using Json = nlohmann::json;

// Complex scalars travel as {"re": ..., "im": ...}.
Json complex_to_json(Complex c);
Complex complex_from_json(const Json& j);

// FockVector: array of {"word": [indices], "re": .., "im": ..}.
Json fock_to_json(const FockVector& v);
FockVector fock_from_json(const Json& j, const HilbertSpec& space, int cutoff);

// WickExpression: {"scalar": {re,im}, "terms": [{"coeff": {re,im}, "letters": [[{re,im}...]]}]}.
Json wick_to_json(const WickExpression& x);
WickExpression wick_from_json(const Json& j, const HilbertSpec& space);

// Representation file: {"dim": d, "conj_perm": [...], "gen": [[{re,im}...]]}.
Json rep_to_json(const OrthogonalRep& rep);
OrthogonalRep rep_from_json(const Json& j);

// Measure file: tagged union on "type" in {"atomic", "grid", "cantor"}.
Json measure_to_json(const TorusMeasure& mu);
TorusMeasure measure_from_json(const Json& j);

Json report_to_json(const MasaInvariantReport& rep);
Json report_to_json(const ExoticnessReport& rep);

} // namespace fockbench

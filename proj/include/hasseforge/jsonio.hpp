#pragma once

#include <json.hpp>

#include "hasseforge/dcc.hpp"

namespace hf {

// schema "hasse-forge/1": big integers as decimal strings, stable key order
using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "hasse-forge/1";

Json to_json(const Septuple& s);
Json to_json(const FmReport& r);
Json to_json(const MordellCurve& c);
Json to_json(const FermatCurve& c);
Json to_json(const PlaceCertificate& c);
Json to_json(const EverywhereLocalReport& r);
Json to_json(const BrauerSample& s);
Json to_json(const CounterexampleCertificate& c);
Json to_json(const KappaRecipe& r);
Json to_json(const CReport& r);
Json to_json(const KappaChiRecipe& r);
Json to_json(const DReport& r);
Json to_json(const FamilyTwoRecipe& r);
Json to_json(const CurveSequence& s);
Json to_json(const DccReport& r);

Septuple septuple_from_json(const Json& j);

/// Offline re-verification of an emitted counterexample certificate: FM is
/// re-run, every recorded witness is re-evaluated with its stated margins,
/// and the invariant samples are recomputed.
bool check_certificate(const Json& j, std::string& why, const SearchCaps& caps);

}  // namespace hf

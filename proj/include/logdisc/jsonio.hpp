#pragma once
// JSON document formats: polynomial documents and arrangement documents.

#include "logdisc/poly.hpp"
#include <nlohmann/json.hpp>

namespace logdisc {

using Json = nlohmann::json;

// {"vars": ["u0", ...], "terms": [{"c": "p/q", "e": [int, ...]}, ...]}
Json poly_to_doc(const Poly& f);
Poly poly_from_doc(const Json& doc);

} // namespace logdisc

#pragma once

#include <json.hpp>

#include "thetadet/nome_series.hpp"

namespace thetadet {

// Coefficient dump:
//   { "nvars": n, "low": l, "order": N,
//     "terms": [ { "q": k, "exps": [e1..en], "num": "...", "den": "..." }, ... ] }
// Terms are sorted by (q, exps lexicographic); integers are decimal strings.
nlohmann::json series_to_json(const NomeSeries& s);
NomeSeries series_from_json(const nlohmann::json& j);

nlohmann::json verdict_to_json(const Verdict& v);

}  // namespace thetadet

#pragma once

// Serialization of results: JSON with lexicographic keys and 17 significant
// digits, and RFC 4180 style CSV.

#include <ostream>
#include <string>

#include <json.hpp>

#include "fplap/analysis.hpp"
#include "fplap/model.hpp"
#include "fplap/quad.hpp"

namespace fplap::report {

using Json = nlohmann::json;

/// "%.17g"; non-finite values become "inf", "-inf" or "nan".
std::string format_double(double v);

/// Deterministic JSON text: sorted keys, two-space indent, doubles with 17
/// significant digits, non-finite doubles as null, trailing newline.
std::string dump(const Json& j);

Json to_json(const Params& p);
Json to_json(const quad::QuadConfig& c);
Json to_json(const EvalResult& r);
Json to_json(const SweepRow& r);
Json to_json(const IdentityReport& r);
Json to_json(const SingularFit& f);
Json to_json(const HopfReport& r);
Json to_json(const LspResult& r);
Json to_json(const ComparisonReport& r);

/// {params, config, rows, summary}.
Json document(const Params& params, const quad::QuadConfig& cfg, Json rows, Json summary);

/// Header x,value,err_est,n_evals,status then one line per row.
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Header plus rows; fields are quoted when they contain , " or a newline.
std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

}  // namespace fplap::report

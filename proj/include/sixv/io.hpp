#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sixv/duality.hpp"
#include "sixv/dynamics.hpp"
#include "sixv/params.hpp"
#include "sixv/verify.hpp"

namespace sixv {

using Json = nlohmann::json;

/// {"q": "num/den", "b2": "num/den"} when homogeneous, otherwise
/// {"q": ..., "b2_sites": {"<site>": "num/den", ...}, "b2_default": ...}.
Json to_json(const Params& params);
Params params_from_json(const Json& j);

/// Array of {"positions": [...], "lumped": n, "prob": "num/den"}.
Json to_json(const StepDistribution& dist);

/// {"value": "num/den"}
Json to_json(const ExactExpectation& e);
/// {"mean": .., "stderr": .., "n": .., "seed": ..}
Json to_json(const McExpectation& e);

Json to_json(const CheckReport& report);
CheckReport check_report_from_json(const Json& j);

/// {"total", "passed", "failed", "elapsed_ms"}
Json summary_json(const SweepResult& result);

/// {"max_l", "max_k", "window": [lo, hi], "t": [...], "params": [...],
///  "kinds": ["H", ...], "identities": bool, "mutation": "none"}
Json to_json(const SweepSpec& spec);
SweepSpec sweep_spec_from_json(const Json& j);

std::string_view to_string(Mutation m);
Mutation parse_mutation(std::string_view text);

/// One CheckReport per line; blank lines are skipped.
void write_reports(std::ostream& out, const std::vector<CheckReport>& reports);
std::vector<CheckReport> read_reports(std::istream& in);

}  // namespace sixv

#pragma once

#include "skew/aberg.hpp"
#include "skew/clocknet.hpp"
#include "skew/monotone.hpp"
#include "skew/qmat.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace skew {

using json = nlohmann::json;

// Parse errors and malformed payloads surface as validation_error so the CLI
// can map every input problem to one exit code.
json load_json_file(const std::string& path);

// {"dim": n, "entries": [[re, im], ...]} with dim^2 row-major entries.
ComplexMatrix matrix_from_json(const json& j);
json matrix_to_json(const ComplexMatrix& m);

// {"name": ..., "f0": ..., "samples": [[x, f(x)], ...]}
MonotoneFunction monotone_from_json(const json& j);

// Builtin id ("WY", "SLD", "WYD" + alpha) or a path to a table JSON file.
MonotoneFunction resolve_monotone(const std::string& f_id, std::optional<double> alpha);

// {"layout": [...], "global_state": {...}, "H_list": [...], "threshold": t,
//  "f_id": ..., "alpha"?: a, "rule": "naive"|"conservative"|"scaled",
//  "scale"?: c, "report_bias"?: [...]}
ClockScenario scenario_from_json(const json& j);

json outcome_to_json(const DecisionOutcome& out);

std::string format_sig(double v, int digits = 12);
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace skew

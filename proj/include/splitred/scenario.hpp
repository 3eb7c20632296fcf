#pragma once

#include <string>

#include <json.hpp>

#include "splitred/tower.hpp"

namespace splitred {

inline constexpr long scenario_schema_version = 1;

// A parsed scenario document: a tower to build and one analysis to run on it.
struct scenario {
    std::string id;
    tower_spec tspec;
    std::string kind; // tate_restriction | type_iv | type_i0star | conductor | tame_base
    nlohmann::json analysis; // kind-specific fields, after ${var} substitution
};

// Validates the document (schema_version, tower, analysis) and substitutes
// integer variables from the optional top-level "vars" object into every
// string field. Throws schema_error on any violation.
scenario parse_scenario(const nlohmann::json& doc);

struct scenario_result {
    std::string id;
    nlohmann::json report;
    bool inconclusive = false;
    // CSV summary fields; empty string when a column does not apply
    std::string p, d, n, v_p_n, lifting_exponent, status, delta_swan, bk_bound, certificate;
};

// Runs the analysis; precision_override (when nonzero) replaces the tower
// precision from the document.
scenario_result run_scenario(const scenario& sc, unsigned precision_override = 0);

std::string csv_header();
std::string csv_row(const scenario_result& r);

} // namespace splitred

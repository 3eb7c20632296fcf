#pragma once

#include <stdexcept>
#include <string>

namespace splitred {

// Base class for all analysis-level failures. CLI maps these to exit code 1.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct non_eisenstein : error {
    int coeff_index;
    non_eisenstein(int idx, const std::string& what)
        : error(what), coeff_index(idx) {}
};

struct insufficient_precision : error {
    using error::error;
};

struct indistinguishable_zero : error {
    indistinguishable_zero() : error("element indistinguishable from 0 at this precision") {}
    using error::error;
};

struct division_by_zero : error {
    division_by_zero() : error("division by element indistinguishable from 0") {}
};

struct precision_exhausted : error {
    using error::error;
};

struct parse_failure : error {
    std::size_t position;
    parse_failure(std::size_t pos, const std::string& what)
        : error(what), position(pos) {}
};

struct unknown_symbol : parse_failure {
    using parse_failure::parse_failure;
};

struct unsupported_extension_shape : error {
    using error::error;
};

struct non_unit : error {
    non_unit() : error("element is not a unit") {}
    using error::error;
};

struct too_large : error {
    using error::error;
};

struct table_violation : error {
    std::string which;
    table_violation(std::string w)
        : error("valuation table violated: " + w), which(std::move(w)) {}
};

struct torsion_degenerate : error {
    torsion_degenerate() : error("reference point is torsion; analysis degenerates") {}
};

struct residue_collision : error {
    residue_collision() : error("cubic roots do not have pairwise distinct residues") {}
};

struct unknown_type : error {
    using error::error;
};

struct degree_guard : error {
    using error::error;
};

struct negative_result : error {
    using error::error;
};

struct not_tame : error {
    using error::error;
};

struct not_divisor : error {
    using error::error;
};

struct non_integral_bound : error {
    using error::error;
};

struct denominator_not_prime_to_p : error {
    using error::error;
};

struct inconsistent_with_e : error {
    using error::error;
};

struct input_inconsistent : error {
    std::string constraint;
    input_inconsistent(std::string c)
        : error("inconsistent input: " + c), constraint(std::move(c)) {}
};

struct schema_error : error {
    using error::error;
};

} // namespace splitred

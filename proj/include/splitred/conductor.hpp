#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "splitred/kodaira.hpp"
#include "splitred/tatesplit.hpp"

namespace splitred {

// lambda_p(n) = sum i * r_i * p^i over the base-p digits r_i of n.
long lambda_p(long n, unsigned p);

// Swan-conductor bound 2(d_t + d_a) p v_K(p) + (p-1)(2 lambda_p(d_t) +
// lambda_p(2 d_a)) v_K(p). d_a may be half-integral, so it enters as
// two_da = 2 d_a.
long bk_bound(unsigned p, long vKp, long d_t, long two_da);

// Converts a rational d_a (num/den) to 2*d_a; rejects anything that is not a
// half-integer.
long two_da_from_rational(long num, long den);

// delta(A/K) = delta(E/L) + 2(v_L(D_{L/K}) - (p-1)) for the Weil restriction
// along a degree-p extension. set unsafe_degree to apply it to other degrees
// (unverified regime).
long swan_weil_restriction(long delta_E, long v_different, unsigned p,
                           unsigned extension_degree, bool unsafe_degree = false);

// delta of the norm-one torus of a quadratic extension M/L: v_M(D_{M/L}) - 1.
long swan_norm_torus(long v_different_M_over_L);

// delta(E/L) = 2 * delta of the norm-one torus, for the Tate curve attached to
// a quadratic twist datum.
long swan_tate_from_norm_torus(long delta_torus);

// delta over the tame degree-d extension: d * delta. Requires gcd(d, p) = 1.
long swan_tame_scaling(long delta, long d, unsigned p);

// delta(A/K) = delta(E/L) + 2 p v_K(a_{p-1}) - (p-1) for the equal
// characteristic Artin-Schreier-type family.
long equal_char_swan_family(long delta_E, unsigned p, long v_a);

struct validator_verdict {
    bool pass = true;
    std::string detail; // violated inequality when pass = false
};

// Elliptic bounds: 1 <= delta <= 3 for totally not split; for not split (not
// totally) the type must be I_{2n}* with 1 <= delta <= 2n + 3.
validator_verdict validate_elliptic_bounds(split_status_kind status, long delta,
                                           std::optional<kodaira> type = std::nullopt);

// Quotient torus S: totally not split iff 1 <= delta <= dim S; above the
// threshold (dim S + 1) ord_p(dim S + 1) v_K(p) the status must be Split.
validator_verdict validate_quotient_torus(long dimS, long delta, split_status_kind status,
                                          unsigned p, long vKp);

struct conductor_report {
    std::vector<std::pair<std::string, long>> deltas; // labelled delta values
    std::vector<std::pair<std::string, long>> differents;
    std::vector<std::pair<std::string, long>> lambdas;
    std::optional<long> bk;
    std::vector<std::pair<std::string, validator_verdict>> validators;
};

nlohmann::json conductor_report_to_json(const conductor_report& r);

} // namespace splitred

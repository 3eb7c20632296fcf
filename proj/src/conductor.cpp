#include "splitred/conductor.hpp"

#include <numeric>

namespace splitred {

long lambda_p(long n, unsigned p) {
    if (n < 0) throw error("lambda_p requires n >= 0");
    if (p < 2) throw error("lambda_p requires p >= 2");
    long out = 0;
    long pi = 1;
    for (long i = 0; n > 0; ++i, n /= static_cast<long>(p), pi *= static_cast<long>(p)) {
        long ri = n % static_cast<long>(p);
        out += i * ri * pi;
    }
    return out;
}

long bk_bound(unsigned p, long vKp, long d_t, long two_da) {
    if (vKp < 0 || d_t < 0 || two_da < 0)
        throw error("bk_bound requires nonnegative inputs");
    // 2(d_t + d_a) = 2 d_t + two_da, so every term below is an integer.
    long toric_term = (2 * d_t + two_da) * static_cast<long>(p) * vKp;
    long lambda_term =
        (static_cast<long>(p) - 1) * (2 * lambda_p(d_t, p) + lambda_p(two_da, p)) * vKp;
    return toric_term + lambda_term;
}

long two_da_from_rational(long num, long den) {
    if (den == 0) throw non_integral_bound("d_a has zero denominator");
    if ((2 * num) % den != 0)
        throw non_integral_bound("d_a must be a half-integer for the bound");
    return 2 * num / den;
}

long swan_weil_restriction(long delta_E, long v_different, unsigned p,
                           unsigned extension_degree, bool unsafe_degree) {
    if (delta_E < 0) throw error("delta(E/L) must be >= 0");
    if (extension_degree != p && !unsafe_degree)
        throw degree_guard("the identity is only applied to degree-p extensions");
    long out = delta_E + 2 * (v_different - (static_cast<long>(p) - 1));
    if (out < 0) throw negative_result("Swan conductor came out negative");
    return out;
}

long swan_norm_torus(long v_different_M_over_L) {
    if (v_different_M_over_L < 1)
        throw error("quadratic different valuation must be >= 1");
    return v_different_M_over_L - 1;
}

long swan_tate_from_norm_torus(long delta_torus) {
    if (delta_torus < 0) throw error("delta of the torus must be >= 0");
    return 2 * delta_torus;
}

long swan_tame_scaling(long delta, long d, unsigned p) {
    if (delta < 0) throw error("delta must be >= 0");
    if (d < 1 || std::gcd(d, static_cast<long>(p)) != 1)
        throw not_tame("tame scaling needs gcd(d, p) = 1");
    return d * delta;
}

long equal_char_swan_family(long delta_E, unsigned p, long v_a) {
    if (delta_E < 0) throw error("delta(E/L) must be >= 0");
    if (v_a < 1) throw error("v_K(a_{p-1}) must be >= 1");
    long out = delta_E + 2 * static_cast<long>(p) * v_a - (static_cast<long>(p) - 1);
    if (out < 0) throw negative_result("Swan conductor came out negative");
    return out;
}

validator_verdict validate_elliptic_bounds(split_status_kind status, long delta,
                                           std::optional<kodaira> type) {
    switch (status) {
    case split_status_kind::TotallyNotSplit:
        if (delta < 1) return {false, "totally not split requires 1 <= delta"};
        if (delta > 3) return {false, "totally not split requires delta <= 3"};
        return {true, ""};
    case split_status_kind::NotSplit: {
        if (!type) return {false, "reduction type required for the not-split bound"};
        if (type->t != kodaira::I_n_star || type->n % 2 != 0)
            return {false, "not split (not totally) requires type I_{2n}*"};
        long n = type->n / 2;
        if (delta < 1) return {false, "not split requires 1 <= delta"};
        if (delta > 2 * n + 3) return {false, "not split requires delta <= 2n + 3"};
        return {true, ""};
    }
    default:
        return {true, ""};
    }
}

validator_verdict validate_quotient_torus(long dimS, long delta, split_status_kind status,
                                          unsigned p, long vKp) {
    if (dimS < 1) throw error("dim S must be >= 1");
    bool in_band = delta >= 1 && delta <= dimS;
    bool tns = status == split_status_kind::TotallyNotSplit;
    if (tns && !in_band)
        return {false, "totally not split requires 1 <= delta <= dim S"};
    if (in_band && !tns)
        return {false, "1 <= delta <= dim S requires totally not split"};
    long m = dimS + 1;
    long ord = 0;
    for (long q = m; q % static_cast<long>(p) == 0; q /= static_cast<long>(p)) ++ord;
    long threshold = m * ord * vKp;
    if (threshold > 0 && delta >= threshold && status != split_status_kind::Split)
        return {false, "delta above the split threshold requires split reduction"};
    return {true, ""};
}

nlohmann::json conductor_report_to_json(const conductor_report& r) {
    nlohmann::json j;
    j["deltas"] = nlohmann::json::object();
    for (const auto& [k, v] : r.deltas) j["deltas"][k] = v;
    j["differents"] = nlohmann::json::object();
    for (const auto& [k, v] : r.differents) j["differents"][k] = v;
    j["lambdas"] = nlohmann::json::object();
    for (const auto& [k, v] : r.lambdas) j["lambdas"][k] = v;
    if (r.bk)
        j["bk_bound"] = *r.bk;
    else
        j["bk_bound"] = nullptr;
    j["validators"] = nlohmann::json::object();
    for (const auto& [k, v] : r.validators) {
        j["validators"][k] = {{"pass", v.pass}, {"detail", v.detail}};
    }
    return j;
}

} // namespace splitred

#include "splitred/tamebase.hpp"

#include <numeric>

namespace splitred {

long elliptic_stabilization_index(const kodaira& type) {
    switch (type.t) {
    case kodaira::good:
    case kodaira::I_n:
        return 1;
    case kodaira::I_n_star:
        return 2;
    case kodaira::IV:
    case kodaira::IV_star:
        return 3;
    case kodaira::III:
    case kodaira::III_star:
        return 4;
    case kodaira::II:
    case kodaira::II_star:
        return 6;
    }
    throw unknown_type("no stabilization index for this type");
}

long stabilization_rescale(long e, long a, unsigned p) {
    if (e < 1 || a < 1) throw error("stabilization indices must be >= 1");
    if (std::gcd(a, static_cast<long>(p)) != 1)
        throw not_tame("rescaling degree must be prime to p");
    if (e % a != 0) throw not_divisor("rescaling degree must divide e");
    return e / a;
}

long tame_phi_order(long phi_a, long t_a, long ratio, unsigned p) {
    if (phi_a < 1) throw error("|Phi| must be >= 1");
    if (t_a < 0) throw error("toric rank must be >= 0");
    if (ratio < 1 || std::gcd(ratio, static_cast<long>(p)) != 1)
        throw error("degree ratio must be a positive integer prime to p");
    long out = phi_a;
    for (long i = 0; i < t_a; ++i) out *= ratio;
    return out;
}

split_guarantee jacobian_split_certificate(long e, long d, unsigned p) {
    if (e < 1 || d < 1) throw error("e and d must be >= 1");
    if (std::gcd(d, static_cast<long>(p)) != 1)
        throw not_tame("base-change degree must be prime to p");
    return d > e ? split_guarantee::SplitGuaranteed : split_guarantee::NoGuarantee;
}

elliptic_split_decision elliptic_split_after(const kodaira& type, long L_degree, long delta,
                                             long v_disc, long d, unsigned p) {
    if (L_degree < 1) throw error("[L:K] must be >= 1");
    if (std::gcd(d, static_cast<long>(p)) != 1)
        throw not_tame("base-change degree must be prime to p");
    if (d <= L_degree) throw error("the decision applies only when d > [L:K]");

    if (d >= 4) return {true, "degree >= 4 forces split reduction"};

    switch (type.t) {
    case kodaira::good:
    case kodaira::I_n:
        return {true, "semistable reduction: stabilization index 1 < d"};
    case kodaira::I_n_star:
        // d = 2 would need L_degree = 1, impossible for an additive type
        if (d == 2) throw input_inconsistent("additive type needs [L:K] >= 2");
        return {true, "I_n*: stabilization index 2 < d = 3"};
    case kodaira::IV:
    case kodaira::IV_star:
        if (d == 2) throw input_inconsistent("additive type needs [L:K] >= 2");
        // d = 3 forces L_degree = 2, which cannot kill the order-3 component
        // group of types IV and IV*
        throw input_inconsistent(
            "types IV and IV* have component group of order 3, not killed by [L:K] = 2");
    case kodaira::II:
    case kodaira::III:
    case kodaira::III_star:
    case kodaira::II_star: {
        if (d == 2) throw input_inconsistent("additive type needs [L:K] >= 2");
        // d = 3, hence L_degree = 2. The only not-split pattern for these
        // types has delta = 1 and v(Delta) in {3, 4, 10, 11}, which cannot
        // occur together with [L:K] = 2.
        if (delta == 1 &&
            (v_disc == 3 || v_disc == 4 || v_disc == 10 || v_disc == 11))
            throw input_inconsistent(
                "delta = 1 with v(Delta) in {3,4,10,11} is incompatible with [L:K] = 2");
        if (delta == 0)
            return {true, "tame (delta = 0): split after any tame extension killing Phi"};
        return {true, "II/III/III*/II* with d = 3: the not-split pattern is excluded"};
    }
    }
    throw unknown_type("unhandled reduction type");
}

jumps_report jumps_summary(const std::vector<rational>& jumps, unsigned p,
                           std::optional<long> e) {
    jumps_report out;
    long min_nonzero_num = 0, min_nonzero_den = 1;
    bool have_nonzero = false;
    for (const auto& j : jumps) {
        if (j.den <= 0) throw error("jump denominators must be positive");
        if (j.num < 0 || j.num >= j.den) throw error("jumps must lie in [0, 1)");
        long g = std::gcd(j.num, j.den);
        long den = j.den / (g == 0 ? j.den : g);
        if (j.num == 0) den = 1;
        if (std::gcd(den, static_cast<long>(p)) != 1)
            throw denominator_not_prime_to_p("jump denominator divisible by p");
        out.lcm_denominator = std::lcm(out.lcm_denominator, den);
        if (j.num != 0) {
            ++out.u;
            // track the smallest nonzero jump
            if (!have_nonzero ||
                j.num * min_nonzero_den < min_nonzero_num * j.den) {
                min_nonzero_num = j.num;
                min_nonzero_den = j.den;
                have_nonzero = true;
            }
        }
    }
    if (e) {
        if (*e < 1) throw error("stabilization index must be >= 1");
        if (*e % out.lcm_denominator != 0)
            throw inconsistent_with_e("least common denominator does not divide e");
        if (have_nonzero && min_nonzero_num * *e < min_nonzero_den)
            throw inconsistent_with_e("smallest nonzero jump is below 1/e");
    }
    return out;
}

std::vector<tame_certificate> tame_split_certificates(const reduction_datum& datum,
                                                      unsigned p) {
    std::vector<tame_certificate> out;
    if (datum.phi_order && std::gcd(*datum.phi_order, static_cast<long>(p)) == 1)
        out.push_back({"component-group order prime to p",
                       {"|Phi| = " + std::to_string(*datum.phi_order),
                        "gcd(|Phi|, p) = 1"}});
    if (datum.semiabelian)
        out.push_back({"semi-abelian reduction", {"reduction is already semi-abelian"}});
    if (datum.tame && datum.toric_rank && *datum.toric_rank == 0)
        out.push_back({"tame with toric rank 0",
                       {"L/K tamely ramified", "toric rank of the reduction is 0"}});
    return out;
}

nlohmann::json tame_report_to_json(const reduction_datum& datum,
                                   const std::vector<tame_certificate>& certs) {
    nlohmann::json j;
    j["genus"] = datum.genus;
    j["e"] = datum.e ? nlohmann::json(*datum.e) : nlohmann::json(nullptr);
    j["toric_rank"] =
        datum.toric_rank ? nlohmann::json(*datum.toric_rank) : nlohmann::json(nullptr);
    j["phi_order"] =
        datum.phi_order ? nlohmann::json(*datum.phi_order) : nlohmann::json(nullptr);
    j["type"] = datum.type ? nlohmann::json(to_string(*datum.type)) : nlohmann::json(nullptr);
    j["tame"] = datum.tame;
    j["semiabelian"] = datum.semiabelian;
    j["jumps"] = nlohmann::json::array();
    for (const auto& r : datum.jumps)
        j["jumps"].push_back({{"num", r.num}, {"den", r.den}});
    j["certificates"] = nlohmann::json::array();
    for (const auto& c : certs)
        j["certificates"].push_back({{"name", c.name}, {"hypotheses", c.hypotheses}});
    return j;
}

} // namespace splitred

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "splitred/kodaira.hpp"

namespace splitred {

// Stabilization index of an elliptic curve with the given reduction type:
// the degree of the smallest tame extension giving semistable reduction.
long elliptic_stabilization_index(const kodaira& type);

// e(C(a)/K(a)) = e(C/K) / a for a | e with gcd(a, p) = 1.
long stabilization_rescale(long e, long a, unsigned p);

// |Phi(J_{K(d)})| = ratio^{t_a} |Phi(J_{K(a)})| with ratio = d/a tame.
long tame_phi_order(long phi_a, long t_a, long ratio, unsigned p);

enum class split_guarantee { SplitGuaranteed, NoGuarantee };

// Jacobians split after any tame base change of degree d > e.
split_guarantee jacobian_split_certificate(long e, long d, unsigned p);

struct elliptic_split_decision {
    bool split = false;
    std::string branch; // which case of the decision table applied
};

// Decides split reduction of E_{K(d)} for tame d > L_degree, where L/K is the
// minimal extension with semistable reduction.
elliptic_split_decision elliptic_split_after(const kodaira& type, long L_degree, long delta,
                                             long v_disc, long d, unsigned p);

struct rational {
    long num = 0;
    long den = 1;
};

struct jumps_report {
    long u = 0;               // number of nonzero jumps
    long lcm_denominator = 1; // least common denominator of the jumps
};

jumps_report jumps_summary(const std::vector<rational>& jumps, unsigned p,
                           std::optional<long> e = std::nullopt);

struct reduction_datum {
    long genus = 1;
    std::optional<long> e;           // stabilization index
    std::optional<long> toric_rank;
    std::optional<long> phi_order;   // |Phi|
    std::optional<kodaira> type;     // elliptic case
    std::optional<long> delta;
    std::optional<long> v_disc;
    std::vector<rational> jumps;
    bool tame = false;               // L/K tamely ramified
    bool semiabelian = false;        // already semi-abelian reduction
};

struct tame_certificate {
    std::string name;
    std::vector<std::string> hypotheses;
};

// Every split-reduction guarantee whose hypotheses the datum satisfies.
std::vector<tame_certificate> tame_split_certificates(const reduction_datum& datum,
                                                      unsigned p);

nlohmann::json tame_report_to_json(const reduction_datum& datum,
                                   const std::vector<tame_certificate>& certs);

} // namespace splitred

#pragma once

#include "splitred/unitpowers.hpp"

namespace splitred {

// Tate curve E = G_m / q^Z over the level-L field of a two-step tower K < L,
// with component group Phi(E) = Z/nZ for n = v_L(q).
struct tate_curve {
    const tower* tw = nullptr;
    int K = 0;
    int L = 0;
    elem q;
    long n = 0;
};

tate_curve make_tate_curve(const tower& tw, int K, int L, const elem& q);

long component_group_order(const tate_curve& E);

// class of v_L(z) modulo n
long component_of_point(const tate_curve& E, const elem& z);

// whether a point of exact order m of Phi lifts to an order-m point of the
// special fiber of the Weil restriction: pi_L^n/q must be an m-th power of a
// unit of O_L/pi_K.
power_membership_verdict lifts_order_m(const tate_curve& E, unsigned long long m,
                                       const search_budget& budget = {});

enum class split_status_kind { Split, NotSplit, TotallyNotSplit, Inconclusive };
const char* to_string(split_status_kind s);

struct tate_restriction_report {
    long n = 0;
    unsigned r = 0; // v_p(n)
    // largest j <= r such that order-p^j points lift; unset when blocked by an
    // Inconclusive power-membership verdict
    std::optional<unsigned> lifting_exponent;
    split_status_kind status = split_status_kind::Inconclusive;
    bool split = false;
    bool totally_not_split = false;
    // verdicts for m = p^1 .. (up to the first No / Inconclusive)
    std::vector<power_membership_verdict> verdicts;
    // dim A = d = 1 (toric) + (d-1) (unipotent)
    long dim_abelian = 0;
    long toric_rank = 1;
    long unipotent_dim = 0;
};

tate_restriction_report split_status(const tate_curve& E, const search_budget& budget = {});

nlohmann::json report_to_json(const tate_restriction_report& r);

} // namespace splitred

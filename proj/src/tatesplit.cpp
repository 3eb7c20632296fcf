#include "splitred/tatesplit.hpp"

namespace splitred {

tate_curve make_tate_curve(const tower& tw, int K, int L, const elem& q) {
    if (L < 1 || L > tw.top_level() || K < 0 || K >= L)
        throw error("Tate curve needs levels 0 <= K < L <= top");
    if (q.tw != &tw || q.lvl != L) throw error("q must live at level L");
    auto v = q.val_opt();
    if (!v) throw indistinguishable_zero("q is indistinguishable from 0 at this precision");
    if (*v < 1) throw error("|q| < 1 is required: v_L(q) >= 1");
    return {&tw, K, L, q, *v};
}

long component_group_order(const tate_curve& E) { return E.n; }

long component_of_point(const tate_curve& E, const elem& z) {
    if (z.tw != E.tw || z.lvl != E.L) throw error("point must live at level L");
    long v = z.val(); // throws indistinguishable_zero
    long c = v % E.n;
    return c < 0 ? c + E.n : c;
}

power_membership_verdict lifts_order_m(const tate_curve& E, unsigned long long m,
                                       const search_budget& budget) {
    if (m == 0 || E.n % static_cast<long>(m) != 0)
        throw not_divisor("m must divide n = v_L(q)");
    auto ring = truncated_ring(*E.tw, E.K, E.L);
    elem u = E.tw->pi(E.L).pow(static_cast<unsigned long long>(E.n)).div(E.q);
    return mth_power_in_units(ring, u, m, budget);
}

const char* to_string(split_status_kind s) {
    switch (s) {
        case split_status_kind::Split: return "Split";
        case split_status_kind::NotSplit: return "NotSplit";
        case split_status_kind::TotallyNotSplit: return "TotallyNotSplit";
        default: return "Inconclusive";
    }
}

tate_restriction_report split_status(const tate_curve& E, const search_budget& budget) {
    tate_restriction_report rep;
    rep.n = E.n;
    rep.dim_abelian = E.tw->ram_index(E.K, E.L);
    rep.unipotent_dim = rep.dim_abelian - 1;

    long n = E.n;
    unsigned r = 0;
    while (n % static_cast<long>(E.tw->p) == 0) {
        n /= static_cast<long>(E.tw->p);
        ++r;
    }
    rep.r = r;

    if (r == 0) {
        rep.lifting_exponent = 0;
        rep.status = split_status_kind::Split;
        rep.split = true;
        return rep;
    }

    // by monotonicity j* is the last consecutive Yes from j = 1 upward
    unsigned jstar = 0;
    unsigned long long m = 1;
    bool blocked = false;
    for (unsigned j = 1; j <= r; ++j) {
        m *= E.tw->p;
        auto v = lifts_order_m(E, m, budget);
        rep.verdicts.push_back(v);
        if (v.answer == membership_answer::Yes) {
            jstar = j;
        } else if (v.answer == membership_answer::No) {
            break;
        } else {
            blocked = true;
            break;
        }
    }
    if (blocked) {
        rep.status = split_status_kind::Inconclusive;
        return rep;
    }
    rep.lifting_exponent = jstar;
    if (jstar == r) {
        rep.status = split_status_kind::Split;
        rep.split = true;
    } else if (jstar == 0) {
        rep.status = split_status_kind::TotallyNotSplit;
        rep.totally_not_split = true;
    } else {
        rep.status = split_status_kind::NotSplit;
    }
    return rep;
}

nlohmann::json report_to_json(const tate_restriction_report& r) {
    nlohmann::json j;
    j["n"] = r.n;
    j["v_p_n"] = r.r;
    if (r.lifting_exponent)
        j["lifting_exponent"] = *r.lifting_exponent;
    else
        j["lifting_exponent"] = nullptr;
    j["status"] = to_string(r.status);
    j["split"] = r.split;
    j["totally_not_split"] = r.totally_not_split;
    j["dim_abelian"] = r.dim_abelian;
    j["toric_rank"] = r.toric_rank;
    j["unipotent_dim"] = r.unipotent_dim;
    nlohmann::json vs = nlohmann::json::array();
    for (const auto& v : r.verdicts) vs.push_back(verdict_to_json(v));
    j["verdicts"] = vs;
    return j;
}

} // namespace splitred

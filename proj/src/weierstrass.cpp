#include "splitred/weierstrass.hpp"

#include <algorithm>

namespace splitred {

kodaira parse_kodaira(const std::string& s) {
    std::string t;
    for (char c : s)
        if (c != '_' && c != ' ') t.push_back(c);
    bool star = !t.empty() && t.back() == '*';
    if (star) t.pop_back();
    if (!star) {
        if (t == "good") return {kodaira::good, 0};
        if (t == "II") return {kodaira::II, 0};
        if (t == "III") return {kodaira::III, 0};
        if (t == "IV") return {kodaira::IV, 0};
    } else {
        if (t == "II") return {kodaira::II_star, 0};
        if (t == "III") return {kodaira::III_star, 0};
        if (t == "IV") return {kodaira::IV_star, 0};
    }
    if (t.size() >= 2 && t[0] == 'I' && std::all_of(t.begin() + 1, t.end(), ::isdigit)) {
        long n = std::stol(t.substr(1));
        return {star ? kodaira::I_n_star : kodaira::I_n, n};
    }
    throw unknown_type("unrecognized Kodaira type: " + s);
}

std::string to_string(const kodaira& t) {
    switch (t.t) {
        case kodaira::good: return "good";
        case kodaira::I_n: return "I" + std::to_string(t.n);
        case kodaira::II: return "II";
        case kodaira::III: return "III";
        case kodaira::IV: return "IV";
        case kodaira::I_n_star: return "I" + std::to_string(t.n) + "*";
        case kodaira::IV_star: return "IV*";
        case kodaira::III_star: return "III*";
        default: return "II*";
    }
}

weierstrass_curve make_curve(const tower& tw, int L, const elem& a1, const elem& a2,
                             const elem& a3, const elem& a4, const elem& a6) {
    weierstrass_curve E{&tw, L, a1, a2, a3, a4, a6, {}, {}, {}, {}, {}};
    for (const elem* a : {&a1, &a2, &a3, &a4, &a6})
        if (a->tw != &tw || a->lvl != L) throw error("coefficients must live at level L");
    elem four = tw.from_int(L, 4);
    elem two = tw.from_int(L, 2);
    E.b2 = a1 * a1 + four * a2;
    E.b4 = two * a4 + a1 * a3;
    E.b6 = a3 * a3 + four * a6;
    E.b8 = a1 * a1 * a6 + four * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    E.disc = -(E.b2 * E.b2 * E.b8) - tw.from_int(L, 8) * E.b4.pow(3) -
             tw.from_int(L, 27) * E.b6 * E.b6 + tw.from_int(L, 9) * E.b2 * E.b4 * E.b6;
    if (!E.disc.val_opt())
        throw insufficient_precision("discriminant indistinguishable from 0");
    return E;
}

namespace {

fe lift(const weierstrass_curve& E, const elem& a) { return fe(a); }

bool fe_zero(const fe& a) { return a.is_zero_at_precision(); }

} // namespace

bool on_curve(const weierstrass_curve& E, const curve_point& P) {
    if (P.infinity) return true;
    fe lhs = P.y * P.y + lift(E, E.a1) * P.x * P.y + lift(E, E.a3) * P.y;
    fe rhs = P.x.pow(3) + lift(E, E.a2) * P.x * P.x + lift(E, E.a4) * P.x + lift(E, E.a6);
    return fe_zero(lhs - rhs);
}

curve_point negate_point(const weierstrass_curve& E, const curve_point& P) {
    if (P.infinity) return P;
    return curve_point::affine(P.x, -P.y - lift(E, E.a1) * P.x - lift(E, E.a3));
}

curve_point add_points(const weierstrass_curve& E, const curve_point& P, const curve_point& Q) {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    fe a1 = lift(E, E.a1), a2 = lift(E, E.a2), a3 = lift(E, E.a3), a4 = lift(E, E.a4),
       a6 = lift(E, E.a6);

    fe lambda, nu;
    if (!fe_zero(Q.x - P.x)) {
        fe den = Q.x - P.x;
        lambda = (Q.y - P.y) / den;
        nu = (P.y * Q.x - Q.y * P.x) / den;
    } else {
        // same x: either inverse points, or a doubling
        if (fe_zero(Q.y + P.y + a1 * P.x + a3)) return curve_point::at_infinity();
        fe den = P.y + P.y + a1 * P.x + a3;
        if (fe_zero(den))
            throw precision_exhausted("tangent denominator indistinguishable from 0");
        fe three(P.x.tw()->from_int(E.L, 3));
        fe two(P.x.tw()->from_int(E.L, 2));
        lambda = (three * P.x * P.x + two * a2 * P.x + a4 - a1 * P.y) / den;
        nu = (-(P.x.pow(3)) + a4 * P.x + two * a6 - a3 * P.y) / den;
    }
    fe x3 = lambda * lambda + a1 * lambda - a2 - P.x - Q.x;
    fe y3 = -(lambda + a1) * x3 - nu - a3;
    return curve_point::affine(x3, y3);
}

curve_point multiple(const weierstrass_curve& E, long k, const curve_point& P) {
    if (k < 0) return multiple(E, -k, negate_point(E, P));
    curve_point acc = curve_point::at_infinity();
    for (long i = 0; i < k; ++i) acc = add_points(E, acc, P);
    return acc;
}

long z_valuation(const weierstrass_curve& E, const curve_point& P) {
    if (P.infinity) throw error("z(O) is not defined");
    auto vy = P.y.val_opt();
    if (!vy) throw precision_exhausted("y(P) indistinguishable from 0");
    fe z = -P.x / P.y;
    auto vz = z.val_opt();
    if (!vz) throw precision_exhausted("z(P) indistinguishable from 0");
    return *vz;
}

bool en_membership(const weierstrass_curve& E, const curve_point& P, long n) {
    return z_valuation(E, P) >= n;
}

elem sqrt_element(const elem& a) {
    const tower& tw = *a.tw;
    if (tw.p == 2) throw error("square root needs odd residue characteristic");
    auto v = a.val_opt();
    if (!v) throw insufficient_precision("cannot take sqrt of an indistinguishable zero");
    if (*v % 2 != 0) throw error("valuation is odd; no square root in the field");
    elem u = a.div_pi(*v);
    // residue square root by scanning the finite field
    gf_ctx::elem r0 = u.residue();
    std::optional<gf_ctx::elem> root;
    for (std::uint64_t i = 1; i < tw.k->order(); ++i) {
        gf_ctx::elem c = tw.k->from_index(i);
        if (tw.k->eq(tw.k->mul(c, c), r0)) {
            root = c;
            break;
        }
    }
    if (!root) throw error("unit part is not a residue square");
    elem y = tw.teichmuller(a.lvl, *root);
    elem half = tw.from_int(a.lvl, 2).inv_unit();
    for (int i = 0; i < 64; ++i) {
        if ((y * y).eq(u)) break;
        y = (y + u.div(y)) * half; // Newton: y <- (y + u/y)/2
    }
    if (!(y * y).eq(u)) throw precision_exhausted("square root did not converge");
    return y * tw.pi(a.lvl).pow(static_cast<unsigned long long>(*v / 2));
}

type_iv_report analyze_type_IV(const weierstrass_curve& E, unsigned d) {
    const tower& tw = *E.tw;
    if (tw.p != 3) throw error("type IV analysis requires p = 3");
    if (!E.a1.is_data_zero() || !E.a3.is_data_zero())
        throw error("type IV analysis requires a1 = a3 = 0");
    auto v2 = E.a2.val_opt();
    auto v4 = E.a4.val_opt();
    auto v6 = E.a6.val_opt();
    if (v2 && *v2 < 1) throw table_violation("v(a2) >= 1");
    if (v4 && *v4 < 2) throw table_violation("v(a4) >= 2");
    if (!v6 || *v6 != 2) throw table_violation("v(a6) = 2");

    // the a1 = a3 = 0 specialization must agree with the general identity
    elem b8s = tw.from_int(E.L, 4) * E.a2 * E.a6 - E.a4 * E.a4;
    if (!b8s.eq(E.b8)) throw error("b8 specialization mismatch");

    auto vb8 = E.b8.val_opt();
    if (!vb8) throw torsion_degenerate();

    type_iv_report rep;
    rep.v_b8 = *vb8;
    rep.m = *vb8 - 3;
    if (rep.m < 0) throw table_violation("v(b8) >= 3");
    rep.d = d;

    // cross-validation: explicit 3P for P = (0, sqrt(a6))
    curve_point P = curve_point::affine(fe(tw.zero(E.L)), fe(sqrt_element(E.a6)));
    if (!on_curve(E, P)) throw error("constructed point is not on the curve");
    curve_point threeP = add_points(E, add_points(E, P, P), P);
    if (threeP.infinity) throw torsion_degenerate();
    rep.v_z_3P = z_valuation(E, threeP);
    rep.v_x_3P = threeP.x.val();
    if (rep.v_z_3P != rep.m) throw table_violation("v(z(3P)) = v(b8) - 3");
    if (rep.v_x_3P != 6 - 2 * rep.v_b8) throw table_violation("v(x(3P)) = 6 - 2 v(b8)");

    rep.split_E = rep.m >= 1;
    rep.res_split = rep.m >= static_cast<long>(d);
    return rep;
}

type_i0star_report analyze_type_I0star(const weierstrass_curve& E, unsigned d) {
    const tower& tw = *E.tw;
    if (tw.p != 2) throw error("type I0* analysis requires p = 2");
    if (tw.k->order() < 4) throw residue_collision();
    auto need = [&](const elem& a, long bound, const char* what) {
        auto v = a.val_opt();
        if (v && *v < bound) throw table_violation(what);
    };
    need(E.a1, 1, "v(a1) >= 1");
    need(E.a2, 1, "v(a2) >= 1");
    need(E.a3, 2, "v(a3) >= 2");
    need(E.a4, 2, "v(a4) >= 2");
    need(E.a6, 3, "v(a6) >= 3");

    // roots of the cubic: x = pi*alpha with alpha^3 + (a2/pi) alpha^2 +
    // (a4/pi^2) alpha + (a6/pi^3) = 0; distinct residues allow Newton lifting
    elem pi = tw.pi(E.L);
    elem c2 = E.a2.div_pi();
    elem c1 = E.a4.div_pi(2);
    elem c0 = E.a6.div_pi(3);
    std::vector<gf_ctx::elem> poly = {c0.residue(), c1.residue(), c2.residue(), tw.k->one()};
    auto rbar = tw.k->roots_of(poly);
    if (rbar.size() != 3) throw residue_collision();
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t l = i + 1; l < 3; ++l)
            if (tw.k->eq(rbar[i], rbar[l])) throw residue_collision();

    auto eval = [&](const elem& x) { return x.pow(3) + c2 * x * x + c1 * x + c0; };
    auto eval_d = [&](const elem& x) {
        return tw.from_int(E.L, 3) * x * x + tw.from_int(E.L, 2) * c2 * x + c1;
    };
    std::vector<elem> alphas;
    for (const auto& r : rbar) {
        elem x = tw.teichmuller(E.L, r);
        for (int it = 0; it < 64; ++it) {
            elem fx = eval(x);
            if (!fx.val_opt()) break;
            x = x - fx.div(eval_d(x)); // f'(x) is a unit: residues are simple roots
        }
        alphas.push_back(x);
    }

    type_i0star_report rep;
    rep.d = d;
    long t_E = 1;
    long finite_min = -1, finite_max = -1;
    bool any_infinite = false;
    for (const elem& alpha : alphas) {
        elem den = E.a1 * pi * alpha + E.a3;
        auto vden = den.val_opt();
        if (!vden) {
            rep.m.push_back(std::nullopt); // 2-torsion point
            any_infinite = true;
            continue;
        }
        long mi = *vden - 2;
        if (mi < 0) throw table_violation("v(a1 x_i + a3) >= 2");
        rep.m.push_back(mi);

        // cross-validation by direct doubling
        curve_point P = curve_point::affine(fe(pi * alpha), fe(tw.zero(E.L)));
        if (!on_curve(E, P)) throw error("cubic root does not give a curve point");
        curve_point twoP = add_points(E, P, P);
        if (twoP.infinity) throw table_violation("finite m_i but 2P_i = O");
        if (z_valuation(E, twoP) != mi) throw table_violation("v(z(2P_i)) = v(a1 x_i + a3) - 2");

        finite_min = (finite_min < 0) ? mi : std::min(finite_min, mi);
        finite_max = std::max(finite_max, mi);
    }

    auto classify = [&](long t) {
        // infinite m_i pass every threshold
        bool all_ge = (finite_min < 0) || finite_min >= t;
        bool all_lt = !any_infinite && finite_max < t;
        if (all_ge) return split_status_kind::Split;
        if (all_lt) return split_status_kind::TotallyNotSplit;
        return split_status_kind::NotSplit;
    };
    rep.status_E = classify(t_E);
    rep.status_Res = classify(static_cast<long>(d));
    return rep;
}

long ogg_discriminant(const kodaira& type, long delta) {
    if (delta < 0) throw error("delta must be >= 0");
    long components;
    switch (type.t) {
        case kodaira::II: components = 1; break;
        case kodaira::III: components = 2; break;
        case kodaira::IV: components = 3; break;
        case kodaira::I_n_star: components = 5 + type.n; break;
        case kodaira::IV_star: components = 7; break;
        case kodaira::III_star: components = 8; break;
        case kodaira::II_star: components = 9; break;
        default: throw unknown_type("Ogg arithmetic needs an additive reduction type");
    }
    return 2 + delta + (components - 1);
}

nlohmann::json type_iv_to_json(const type_iv_report& r) {
    nlohmann::json j;
    j["v_b8"] = r.v_b8;
    j["m"] = r.m;
    j["split_E"] = r.split_E;
    j["d"] = r.d;
    j["res_split"] = r.res_split;
    j["v_z_3P"] = r.v_z_3P;
    j["v_x_3P"] = r.v_x_3P;
    return j;
}

nlohmann::json type_i0star_to_json(const type_i0star_report& r) {
    nlohmann::json j;
    nlohmann::json ms = nlohmann::json::array();
    for (const auto& mi : r.m) {
        if (mi)
            ms.push_back(*mi);
        else
            ms.push_back("infinity");
    }
    j["m"] = ms;
    j["status_E"] = to_string(r.status_E);
    j["d"] = r.d;
    j["status_Res"] = to_string(r.status_Res);
    j["phi_order"] = r.phi_order;
    return j;
}

} // namespace splitred

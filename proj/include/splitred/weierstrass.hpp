#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "splitred/kodaira.hpp"
#include "splitred/tatesplit.hpp"

namespace splitred {

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over the level-L field.
struct weierstrass_curve {
    const tower* tw = nullptr;
    int L = 0;
    elem a1, a2, a3, a4, a6;
    elem b2, b4, b6, b8, disc;
};

// Computes b-invariants and the discriminant; the discriminant must be
// distinguishable from 0.
weierstrass_curve make_curve(const tower& tw, int L, const elem& a1, const elem& a2,
                             const elem& a3, const elem& a4, const elem& a6);

struct curve_point {
    bool infinity = true;
    fe x, y;

    static curve_point at_infinity() { return {}; }
    static curve_point affine(fe x, fe y) { return {false, std::move(x), std::move(y)}; }
};

bool on_curve(const weierstrass_curve& E, const curve_point& P);
curve_point negate_point(const weierstrass_curve& E, const curve_point& P);
curve_point add_points(const weierstrass_curve& E, const curve_point& P, const curve_point& Q);
curve_point multiple(const weierstrass_curve& E, long k, const curve_point& P);

// z(P) = -x/y; E^n(L) membership is v(z) >= n.
long z_valuation(const weierstrass_curve& E, const curve_point& P);
bool en_membership(const weierstrass_curve& E, const curve_point& P, long n);

// Hensel/Newton square root (odd residue characteristic); the valuation must
// be even and the unit part a residue square.
elem sqrt_element(const elem& a);

// Type IV (p = 3, a1 = a3 = 0): threshold m = v(b8) - 3 decides splitness of E
// and of the degree-d Weil restriction.
struct type_iv_report {
    long v_b8 = 0;
    long m = 0;
    bool split_E = false;
    unsigned d = 0;
    bool res_split = false;
    // cross-validation against direct point arithmetic on P = (0, sqrt(a6))
    long v_z_3P = 0;
    long v_x_3P = 0;
};

type_iv_report analyze_type_IV(const weierstrass_curve& E, unsigned d);

// Type I0* (p = 2): thresholds on m_i = v(a1 x_i + a3) - 2 over the three
// two-torsion-candidate points P_i = (pi alpha_i, 0).
struct type_i0star_report {
    std::vector<std::optional<long>> m; // nullopt: P_i is 2-torsion (infinite threshold)
    split_status_kind status_E = split_status_kind::Inconclusive;
    unsigned d = 0;
    split_status_kind status_Res = split_status_kind::Inconclusive;
    long phi_order = 4; // Z/2 x Z/2
};

type_i0star_report analyze_type_I0star(const weierstrass_curve& E, unsigned d);

// v(Delta) = 2 + delta + (#components - 1) for additive reduction types.
long ogg_discriminant(const kodaira& type, long delta);

nlohmann::json type_iv_to_json(const type_iv_report& r);
nlohmann::json type_i0star_to_json(const type_i0star_report& r);

} // namespace splitred

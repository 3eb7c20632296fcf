#include "splitred/golden.hpp"

#include <sstream>

#include "splitred/conductor.hpp"
#include "splitred/localfield.hpp"
#include "splitred/tamebase.hpp"
#include "splitred/tatesplit.hpp"
#include "splitred/weierstrass.hpp"

namespace splitred {

namespace {

void expect(bool ok, const std::string& what) {
    if (!ok) throw golden_failure(what);
}

std::shared_ptr<tower> tame_mixed(unsigned p, unsigned d, unsigned s = 1,
                                  unsigned precision = 40) {
    tower_spec spec;
    spec.characteristic = 0;
    spec.p = p;
    spec.residue_degree = s;
    spec.precision = precision;
    std::vector<std::string> poly(d + 1, "0");
    poly[0] = "-" + std::to_string(p);
    poly[d] = "1";
    spec.levels.push_back({"L", d, poly});
    return make_tower(spec);
}

std::shared_ptr<tower> equal_char(unsigned p, unsigned d) {
    tower_spec spec;
    spec.characteristic = p;
    spec.p = p;
    spec.residue_degree = 1;
    spec.precision = 40;
    std::vector<std::string> poly(d + 1, "0");
    poly[0] = "-pi_U";
    poly[d] = "1";
    spec.levels.push_back({"L", d, poly});
    return make_tower(spec);
}

void case_tate_counterexample() {
    for (auto [p, d] :
         std::vector<std::pair<unsigned, unsigned>>{{2, 3}, {2, 5}, {3, 2}, {3, 4}}) {
        auto tw = tame_mixed(p, d);
        elem pi = tw->pi(1);
        elem one = tw->one(1);
        auto bad = split_status(make_tate_curve(*tw, 0, 1, pi.pow(p) * (one + pi)));
        expect(bad.status == split_status_kind::TotallyNotSplit,
               "q = pi^p(1+pi) must be totally not split (p=" + std::to_string(p) +
                   ", d=" + std::to_string(d) + ")");
        auto good = split_status(make_tate_curve(*tw, 0, 1, pi.pow(p)));
        expect(good.status == split_status_kind::Split,
               "q = pi^p must be split (p=" + std::to_string(p) + ")");
    }
}

void case_cyclotomic_pair() {
    tower_spec spec;
    spec.characteristic = 0;
    spec.p = 3;
    spec.residue_degree = 1;
    spec.precision = 40;
    spec.levels.push_back({"L", 2, {"3", "3", "1"}});
    auto tw = make_tower(spec);
    elem pi = tw->pi(1);
    elem zeta = tw->one(1) + pi;
    auto a = split_status(make_tate_curve(*tw, 0, 1, pi.pow(3)));
    expect(a.status == split_status_kind::Split, "q = pi^3 must be split over Q3(zeta_3)");
    auto b = split_status(make_tate_curve(*tw, 0, 1, zeta * pi.pow(3)));
    expect(b.status != split_status_kind::Split && !b.split,
           "q = zeta_3 pi^3 must not be split");
    expect(!b.verdicts.empty() &&
               b.verdicts.front().certificate == certificate_tag::ValuationScreen,
           "the No-certificate must be the valuation screen");
}

void case_lifting_family() {
    auto tw = equal_char(2, 5);
    elem pi = tw->pi(1);
    elem one = tw->one(1);
    for (unsigned m : {0u, 1u}) {
        elem q = pi.pow(4) * (one + pi.pow(1u << m));
        auto rep = split_status(make_tate_curve(*tw, 0, 1, q));
        expect(rep.lifting_exponent && *rep.lifting_exponent == m,
               "lifting exponent must equal m = " + std::to_string(m));
    }
}

void case_differents() {
    for (unsigned d : {2u, 3u, 4u}) {
        tower_spec spec;
        spec.characteristic = 0;
        spec.p = 2;
        spec.residue_degree = 1;
        spec.precision = 60;
        std::vector<std::string> base(d + 1, "0");
        base[0] = "-2";
        base[d] = "1";
        spec.levels.push_back({"K", d, base});
        spec.levels.push_back({"L", 2, {"-pi_K", "0", "1"}});
        spec.levels.push_back({"M", 2, {"pi_L", "pi_L", "1"}});
        auto tw = make_tower(spec);
        expect(different_valuation(*tw, 2) == 2 * static_cast<long>(d) + 1,
               "v(D) of t^2 - pi_K must be 2d+1 at d = " + std::to_string(d));
        expect(different_valuation(*tw, 3) == 2,
               "v(D) of t^2 + pi_L t + pi_L must be 2");
    }
}

void case_kummer_different() {
    for (auto [p, vKp] : std::vector<std::pair<unsigned, long>>{{2, 1}, {3, 1}, {3, 2}}) {
        tower_spec spec;
        spec.characteristic = 0;
        spec.p = p;
        spec.residue_degree = 1;
        spec.precision = 60;
        if (vKp > 1) {
            std::vector<std::string> base(vKp + 1, "0");
            base[0] = "-" + std::to_string(p);
            base[vKp] = "1";
            spec.levels.push_back({"B", static_cast<unsigned>(vKp), base});
        }
        std::vector<std::string> kummer(p + 1, "0");
        kummer[0] = vKp > 1 ? "-pi_B" : "-" + std::to_string(p);
        kummer[p] = "1";
        spec.levels.push_back({"L", p, kummer});
        auto tw = make_tower(spec);
        expect(different_valuation(*tw, tw->top_level()) ==
                   static_cast<long>(p) * vKp + static_cast<long>(p) - 1,
               "v(D) of t^p - pi_K must be p vK(p) + p - 1");
    }
}

void case_swan_2_plus_4d() {
    for (long d : {2l, 3l, 4l}) {
        long delta_E = swan_tate_from_norm_torus(swan_norm_torus(2));
        expect(delta_E == 2, "delta(E/L) via the norm torus must be 2");
        expect(swan_weil_restriction(delta_E, 2 * d + 1, 2, 2) == 2 + 4 * d,
               "delta(A/K) must be 2 + 4d at d = " + std::to_string(d));
    }
}

void case_swan_2p_vkp() {
    for (auto [p, vKp] : std::vector<std::pair<unsigned, long>>{{2, 1}, {3, 1}, {3, 2}}) {
        long v_diff = static_cast<long>(p) * vKp + static_cast<long>(p) - 1;
        long delta_A = swan_weil_restriction(0, v_diff, p, p);
        expect(delta_A == 2 * static_cast<long>(p) * vKp, "delta(A/K) must be 2 p vK(p)");
        expect(delta_A == bk_bound(p, vKp, 1, 0),
               "the Swan conductor must meet the bound exactly");
    }
}

void case_lambda_bk() {
    expect(lambda_p(0, 2) == 0 && lambda_p(1, 2) == 0 && lambda_p(0, 5) == 0 &&
               lambda_p(1, 3) == 0,
           "lambda_p(0) = lambda_p(1) = 0");
    for (long v : {1l, 2l, 3l}) {
        expect(bk_bound(2, v, 0, 2) == 6 * v, "bound instance 6 vK(2)");
        expect(bk_bound(3, v, 0, 1) == 3 * v, "bound instance 3 vK(3)");
    }
}

void case_type_iv() {
    auto tw = tame_mixed(3, 3, 1, 60);
    elem pi = tw->pi(1);
    elem z0 = tw->zero(1);
    auto r0 = analyze_type_IV(make_curve(*tw, 1, z0, pi, z0, pi * pi, pi * pi), 2);
    expect(r0.v_b8 == 3 && !r0.split_E, "v(b8) = 3 must give not-split E");
    auto r1 = analyze_type_IV(make_curve(*tw, 1, z0, pi * pi, z0, pi.pow(3), pi * pi), 2);
    expect(r1.v_b8 == 4 && r1.split_E && !r1.res_split,
           "v(b8) = 4 must split E but never the restriction");
    expect(r1.v_z_3P == r1.m && r1.v_x_3P == 6 - 2 * r1.v_b8,
           "closed forms for v(z(3P)) and v(x(3P))");
}

void case_type_i0star() {
    auto tw = tame_mixed(2, 2, 2, 60);
    elem pi = tw->pi(1);
    elem z0 = tw->zero(1);
    elem zt = tw->teichmuller(1, tw->k->gen());
    std::vector<elem> alphas = {z0, tw->one(1), zt};
    elem a2 = -(pi * (alphas[0] + alphas[1] + alphas[2]));
    elem a4 = pi * pi *
              (alphas[0] * alphas[1] + alphas[0] * alphas[2] + alphas[1] * alphas[2]);
    elem a6 = -(pi.pow(3) * alphas[0] * alphas[1] * alphas[2]);
    auto r = analyze_type_I0star(make_curve(*tw, 1, pi, a2, pi * pi, a4, a6), 3);
    std::vector<long> got;
    for (const auto& mi : r.m) {
        expect(mi.has_value(), "no two-torsion in the reference instance");
        got.push_back(*mi);
    }
    std::sort(got.begin(), got.end());
    expect(got == std::vector<long>({0, 0, 2}), "thresholds must be {0, 0, v_L(2)}");
    expect(r.status_E == split_status_kind::NotSplit, "E must be not split");
    expect(r.status_Res == split_status_kind::TotallyNotSplit,
           "the degree-3 restriction must be totally not split");
}

void case_ogg() {
    expect(ogg_discriminant(parse_kodaira("II"), 1) == 3 &&
               ogg_discriminant(parse_kodaira("III"), 1) == 4 &&
               ogg_discriminant(parse_kodaira("III*"), 1) == 10 &&
               ogg_discriminant(parse_kodaira("II*"), 1) == 11,
           "delta = 1 must give v(Delta) in {3, 4, 10, 11}");
    for (long e : {1l, 2l})
        for (long n : {0l, 1l, 2l})
            expect(ogg_discriminant(kodaira{kodaira::I_n_star, 2 * n}, 6 * e) ==
                       6 * e + 2 * n + 6,
                   "I_{2n}* with delta = 6e must give v(Delta) = 6e + 2n + 6");
}

void case_tame_certificates() {
    expect(jacobian_split_certificate(2, 3, 2) == split_guarantee::SplitGuaranteed,
           "d = 3 > e = 2 must guarantee split reduction");
    auto dec = elliptic_split_after(parse_kodaira("I2*"), 2, 2, 10, 3, 2);
    expect(dec.split, "I_n* with d = 3 must split");
    auto far = elliptic_split_after(parse_kodaira("II"), 2, 1, 3, 5, 2);
    expect(far.split, "d >= 4 must split");
    for (const char* s : {"good", "I3", "I0*", "IV", "IV*", "III", "III*", "II", "II*"})
        expect(elliptic_stabilization_index(parse_kodaira(s)) <= 6,
               "the stabilization index is at most 6");
}

void case_phi_growth() {
    expect(tame_phi_order(1, 2, 3, 2) == 9, "|Phi| growth (d/a)^{t} |Phi|");
    expect(tame_phi_order(5, 0, 7, 2) == 5, "zero toric rank leaves |Phi| unchanged");
}

void case_equal_char_swan() {
    expect(equal_char_swan_family(1, 2, 1) == 4 && equal_char_swan_family(1, 2, 10) == 40,
           "equal characteristic family values");
    long prev = -1;
    for (long va = 1; va <= 6; ++va) {
        long cur = equal_char_swan_family(0, 2, va);
        expect(cur > prev, "the family must have unbounded Swan conductors");
        prev = cur;
    }
}

} // namespace

const std::vector<golden_case>& golden_cases() {
    static const std::vector<golden_case> cases = {
        {"ctrex-tate", "tame Tate counterexample: pi^p(1+pi) totally not split",
         case_tate_counterexample},
        {"ctrex-cyclotomic", "cyclotomic isogeny pair over Q3(zeta_3)",
         case_cyclotomic_pair},
        {"ctrex-lifting-family", "equal characteristic lifting-exponent family",
         case_lifting_family},
        {"norm-torus-differents", "differents of t^2 - pi_K and t^2 + pi_L t + pi_L",
         case_differents},
        {"kummer-different", "different of the Kummer extension t^p - pi_K",
         case_kummer_different},
        {"norm-torus-swan", "Swan pipeline delta(A/K) = 2 + 4d", case_swan_2_plus_4d},
        {"kummer-swan", "Swan value 2 p vK(p) meeting the bound exactly", case_swan_2p_vkp},
        {"bk-lambda", "lambda_p values and the 6v / 3v bound instances", case_lambda_bk},
        {"type-iv", "type IV threshold v(b8) - 3 and closed forms", case_type_iv},
        {"type-i0star", "type I0* thresholds over an F4-residue tower", case_type_i0star},
        {"ogg", "Ogg discriminant values for additive types", case_ogg},
        {"tame-split", "tame base-change split certificates", case_tame_certificates},
        {"phi-growth", "component-group order growth under tame base change",
         case_phi_growth},
        {"equal-char-swan", "unbounded equal characteristic Swan family",
         case_equal_char_swan},
    };
    return cases;
}

} // namespace splitred

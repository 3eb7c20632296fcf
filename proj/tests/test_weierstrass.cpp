#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "splitred/weierstrass.hpp"

using namespace splitred;

namespace {

std::shared_ptr<tower> tame_tower(unsigned p, unsigned d, unsigned s = 1) {
    tower_spec spec;
    spec.characteristic = 0;
    spec.p = p;
    spec.residue_degree = s;
    spec.precision = 60;
    std::vector<std::string> poly(d + 1, "0");
    poly[0] = "-" + std::to_string(p);
    poly[d] = "1";
    spec.levels.push_back({"L", d, poly});
    return make_tower(spec);
}

elem random_unit(const tower& tw, int lvl, std::mt19937& rng) {
    std::uniform_int_distribution<std::uint64_t> any(0, tw.k->order() - 1);
    std::uniform_int_distribution<std::uint64_t> nz(1, tw.k->order() - 1);
    std::vector<gf_ctx::elem> dg = {tw.k->from_index(nz(rng))};
    for (int i = 0; i < 6; ++i) dg.push_back(tw.k->from_index(any(rng)));
    return tw.from_teich_digits(lvl, dg);
}

bool points_equal(const curve_point& P, const curve_point& Q) {
    if (P.infinity || Q.infinity) return P.infinity == Q.infinity;
    return P.x.eq(Q.x) && P.y.eq(Q.y);
}

// admissible type-IV curve with v(b8) forced to `target`
weierstrass_curve random_type_iv(const tower& tw, long target, std::mt19937& rng) {
    elem pi = tw.pi(1);
    elem u6 = random_unit(tw, 1, rng);
    elem a6 = (pi * u6) * (pi * u6); // square unit part, so sqrt exists
    elem a2 = pi.pow(static_cast<unsigned long long>(target - 2)) * random_unit(tw, 1, rng);
    long v4 = target / 2 + 1;
    if (v4 < 2) v4 = 2;
    elem a4 = pi.pow(static_cast<unsigned long long>(v4)) * random_unit(tw, 1, rng);
    return make_curve(tw, 1, tw.zero(1), a2, tw.zero(1), a4, a6);
}

} // namespace

TEST_CASE("group law basics") {
    auto tw = tame_tower(3, 3);
    elem pi = tw->pi(1);
    auto E = make_curve(*tw, 1, tw->zero(1), pi, tw->zero(1), pi * pi, pi * pi);
    curve_point P = curve_point::affine(fe(tw->zero(1)), fe(sqrt_element(E.a6)));
    REQUIRE(on_curve(E, P));

    CHECK(points_equal(add_points(E, P, curve_point::at_infinity()), P));
    CHECK(add_points(E, P, negate_point(E, P)).infinity);

    curve_point twoP = add_points(E, P, P);
    CHECK(on_curve(E, twoP));
    curve_point a = add_points(E, twoP, P);
    curve_point b = add_points(E, P, twoP);
    CHECK(points_equal(a, b));
    CHECK(points_equal(a, multiple(E, 3, P)));
}

TEST_CASE("group law is associative and commutative on sampled points") {
    auto tw = tame_tower(3, 2);
    elem one = tw->one(1);
    // good reduction: y^2 = x^3 + x + 1 with P = (0, 1)
    auto E = make_curve(*tw, 1, tw->zero(1), tw->zero(1), tw->zero(1), one, one);
    curve_point P = curve_point::affine(fe(tw->zero(1)), fe(one));
    // points generated as multiples of P stay on the curve
    std::vector<curve_point> pts;
    for (long k = 1; k <= 4; ++k) pts.push_back(multiple(E, k, P));
    for (const auto& A : pts)
        for (const auto& B : pts) {
            CHECK(points_equal(add_points(E, A, B), add_points(E, B, A)));
            for (const auto& C : pts) {
                auto l = add_points(E, add_points(E, A, B), C);
                auto r = add_points(E, A, add_points(E, B, C));
                CHECK(points_equal(l, r));
            }
        }
}

TEST_CASE("z valuation and E^n membership") {
    auto tw = tame_tower(3, 3);
    elem pi = tw->pi(1);
    auto E = make_curve(*tw, 1, tw->zero(1), pi, tw->zero(1), pi * pi, pi * pi);
    // v(x) = -2, v(y) = -3 gives v(z) = 1
    curve_point P = curve_point::affine(fe(tw->one(1), 2), fe(tw->one(1), 3));
    CHECK(z_valuation(E, P) == 1);
    CHECK(en_membership(E, P, 1));
    CHECK_FALSE(en_membership(E, P, 2));
    curve_point Q = curve_point::affine(fe(tw->one(1)), fe(tw->one(1)));
    CHECK(z_valuation(E, Q) == 0);
    CHECK_FALSE(en_membership(E, Q, 1));
}

TEST_CASE("type IV published instances") {
    auto tw = tame_tower(3, 3);
    elem pi = tw->pi(1);
    elem z0 = tw->zero(1);

    // a2 = pi, a4 = pi^2, a6 = pi^2: v(b8) = 3, not split
    auto E0 = make_curve(*tw, 1, z0, pi, z0, pi * pi, pi * pi);
    auto r0 = analyze_type_IV(E0, 2);
    CHECK(r0.v_b8 == 3);
    CHECK(r0.m == 0);
    CHECK_FALSE(r0.split_E);
    CHECK(r0.v_z_3P == 0);

    // a2 = pi^2, a4 = pi^3, a6 = pi^2: v(b8) = 4, E split, Res never
    auto E1 = make_curve(*tw, 1, z0, pi * pi, z0, pi.pow(3), pi * pi);
    for (unsigned d : {2u, 3u, 5u}) {
        auto r1 = analyze_type_IV(E1, d);
        CHECK(r1.v_b8 == 4);
        CHECK(r1.m == 1);
        CHECK(r1.split_E);
        CHECK_FALSE(r1.res_split);
        CHECK(r1.v_z_3P == 1);
        CHECK(r1.v_x_3P == 6 - 2 * r1.v_b8);
    }

}

TEST_CASE("type IV torsion degenerates") {
    auto tw = tame_tower(3, 3);
    elem pi = tw->pi(1);
    elem z0 = tw->zero(1);
    auto E = make_curve(*tw, 1, z0, z0, z0, z0, pi * pi);
    CHECK_THROWS_AS(analyze_type_IV(E, 2), torsion_degenerate);
}

TEST_CASE("type IV closed form matches point arithmetic on random curves") {
    auto tw = tame_tower(3, 3);
    std::mt19937 rng(20240818);
    for (long target : {3l, 4l, 5l}) {
        int produced = 0;
        while (produced < 10) {
            auto E = random_type_iv(*tw, target, rng);
            type_iv_report r;
            try {
                r = analyze_type_IV(E, 2);
            } catch (const torsion_degenerate&) {
                continue;
            }
            ++produced;
            CHECK(r.v_b8 == target);
            CHECK(r.v_z_3P == r.m); // analyze itself cross-checks; assert the values
            CHECK(r.split_E == (r.m >= 1));
            // restriction split implies curve split
            if (r.res_split) CHECK(r.split_E);
        }
    }
}

TEST_CASE("type IV table violations are reported") {
    auto tw = tame_tower(3, 3);
    elem pi = tw->pi(1);
    elem z0 = tw->zero(1);
    elem one = tw->one(1);
    CHECK_THROWS_AS(analyze_type_IV(make_curve(*tw, 1, z0, one, z0, pi * pi, pi * pi), 2),
                    table_violation); // v(a2) = 0
    CHECK_THROWS_AS(analyze_type_IV(make_curve(*tw, 1, z0, pi, z0, pi, pi * pi), 2),
                    table_violation); // v(a4) = 1
    CHECK_THROWS_AS(analyze_type_IV(make_curve(*tw, 1, z0, pi, z0, pi * pi, pi.pow(3)), 2),
                    table_violation); // v(a6) = 3
    CHECK_THROWS_AS(analyze_type_IV(make_curve(*tw, 1, pi, pi, z0, pi * pi, pi * pi), 2),
                    error); // a1 != 0
}

TEST_CASE("type I0* published instance over an F_4 residue field") {
    auto tw = tame_tower(2, 2, 2);
    elem pi = tw->pi(1);
    elem z0 = tw->zero(1);
    elem zt = tw->teichmuller(1, tw->k->gen());

    // cubic roots pi*alpha with alpha in {0, 1, z}
    std::vector<elem> alphas = {z0, tw->one(1), zt};
    elem a2 = -(pi * (alphas[0] + alphas[1] + alphas[2]));
    elem a4 = pi * pi *
              (alphas[0] * alphas[1] + alphas[0] * alphas[2] + alphas[1] * alphas[2]);
    elem a6 = -(pi.pow(3) * alphas[0] * alphas[1] * alphas[2]);
    elem a1 = pi;
    elem a3 = pi * pi;
    auto E = make_curve(*tw, 1, a1, a2, a3, a4, a6);
    auto r = analyze_type_I0star(E, 3);

    // m_i = v(alpha_i + 1): {0, v_L(2) = 2, 0} in some order
    std::vector<long> got;
    for (const auto& mi : r.m) {
        REQUIRE(mi.has_value());
        got.push_back(*mi);
    }
    std::sort(got.begin(), got.end());
    CHECK(got == std::vector<long>{0, 0, 2});
    CHECK(r.status_E == split_status_kind::NotSplit);
    // all m_i finite and below d = 3
    CHECK(r.status_Res == split_status_kind::TotallyNotSplit);
}

TEST_CASE("type I0* statuses follow the thresholds") {
    auto tw = tame_tower(2, 2, 2);
    elem pi = tw->pi(1);
    elem one = tw->one(1);
    elem zt = tw->teichmuller(1, tw->k->gen());
    std::mt19937 rng(4096);

    int seen_tns = 0, seen_split = 0;
    for (int it = 0; it < 40; ++it) {
        // three alphas with the three distinct residues 1, z, z^2
        std::vector<elem> alphas = {one, zt, zt * zt};
        for (auto& a : alphas) a = a + pi * random_unit(*tw, 1, rng);
        elem a2 = -(pi * (alphas[0] + alphas[1] + alphas[2]));
        elem a4 = pi * pi *
                  (alphas[0] * alphas[1] + alphas[0] * alphas[2] + alphas[1] * alphas[2]);
        elem a6 = -(pi.pow(3) * alphas[0] * alphas[1] * alphas[2]);
        elem a1 = pi.pow(1 + (it & 1)) * random_unit(*tw, 1, rng);
        elem a3 = pi.pow(2 + ((it >> 1) & 1)) * random_unit(*tw, 1, rng);
        auto E = make_curve(*tw, 1, a1, a2, a3, a4, a6);
        unsigned d = 3 + 2 * static_cast<unsigned>(it % 2); // odd degrees for p = 2
        auto r = analyze_type_I0star(E, d);

        long minm = 1000, maxm = -1;
        bool any_inf = false;
        for (const auto& mi : r.m) {
            if (!mi) {
                any_inf = true;
                continue;
            }
            minm = std::min(minm, *mi);
            maxm = std::max(maxm, *mi);
        }
        if (maxm < 0) minm = 1000; // all infinite

        auto expect = [&](long t) {
            if (minm >= t || maxm < 0) return split_status_kind::Split;
            if (!any_inf && maxm < t) return split_status_kind::TotallyNotSplit;
            return split_status_kind::NotSplit;
        };
        CHECK(r.status_E == expect(1));
        CHECK(r.status_Res == expect(static_cast<long>(d)));
        // Weil-restriction consistency
        if (r.status_Res == split_status_kind::Split)
            CHECK(r.status_E == split_status_kind::Split);
        if (r.status_E == split_status_kind::TotallyNotSplit)
            CHECK(r.status_Res == split_status_kind::TotallyNotSplit);
        if (r.status_E == split_status_kind::TotallyNotSplit) ++seen_tns;
        if (r.status_E == split_status_kind::Split) ++seen_split;
    }
    CHECK(seen_tns > 0); // the corpus exercises both extremes
    CHECK(seen_split > 0);
}

TEST_CASE("type I0* two-torsion points get infinite thresholds") {
    auto tw = tame_tower(2, 2, 2);
    elem pi = tw->pi(1);
    elem one = tw->one(1);
    elem zt = tw->teichmuller(1, tw->k->gen());
    std::vector<elem> alphas = {one, zt, zt * zt};
    elem a2 = -(pi * (alphas[0] + alphas[1] + alphas[2]));
    elem a4 = pi * pi * (alphas[0] * alphas[1] + alphas[0] * alphas[2] + alphas[1] * alphas[2]);
    elem a6 = -(pi.pow(3) * alphas[0] * alphas[1] * alphas[2]);
    elem a1 = pi;
    elem a3 = -(a1 * pi * alphas[0]); // a1 x_1 + a3 = 0 exactly
    auto E = make_curve(*tw, 1, a1, a2, a3, a4, a6);
    auto r = analyze_type_I0star(E, 2);
    int inf_count = 0;
    for (const auto& mi : r.m)
        if (!mi) ++inf_count;
    CHECK(inf_count == 1);
}

TEST_CASE("type I0* residue collisions are rejected") {
    auto tw = tame_tower(2, 2, 2); // F_4 residue field
    elem pi = tw->pi(1);
    elem one = tw->one(1);
    // double root at alpha = 1
    std::vector<elem> alphas = {one, one, tw->teichmuller(1, tw->k->gen())};
    elem a2 = -(pi * (alphas[0] + alphas[1] + alphas[2]));
    elem a4 = pi * pi * (alphas[0] * alphas[1] + alphas[0] * alphas[2] + alphas[1] * alphas[2]);
    elem a6 = -(pi.pow(3) * alphas[0] * alphas[1] * alphas[2]);
    auto E = make_curve(*tw, 1, pi, a2, pi * pi, a4, a6);
    CHECK_THROWS_AS(analyze_type_I0star(E, 2), residue_collision);
}

TEST_CASE("Ogg discriminant arithmetic") {
    CHECK(ogg_discriminant(parse_kodaira("II"), 1) == 3);
    CHECK(ogg_discriminant(parse_kodaira("III"), 1) == 4);
    CHECK(ogg_discriminant(parse_kodaira("III*"), 1) == 10);
    CHECK(ogg_discriminant(parse_kodaira("II*"), 1) == 11);
    CHECK(ogg_discriminant(parse_kodaira("I0*"), 0) == 6);
    // I_{2n}* with delta = 6e: v(Delta) = 6e + 2n + 6
    for (long e : {1l, 2l}) {
        for (long n : {0l, 1l, 3l}) {
            kodaira t{kodaira::I_n_star, 2 * n};
            CHECK(ogg_discriminant(t, 6 * e) == 6 * e + 2 * n + 6);
        }
    }
    CHECK_THROWS_AS(ogg_discriminant(parse_kodaira("I3"), 1), unknown_type);
    CHECK_THROWS_AS(ogg_discriminant(parse_kodaira("good"), 0), unknown_type);
}

TEST_CASE("Kodaira parsing round trips") {
    for (const char* s : {"good", "II", "III", "IV", "II*", "III*", "IV*", "I0", "I7", "I0*",
                          "I4*"}) {
        auto t = parse_kodaira(s);
        CHECK(to_string(t) == s);
    }
    CHECK(parse_kodaira("I_3").n == 3);
    CHECK_THROWS_AS(parse_kodaira("V"), unknown_type);
}

TEST_CASE("reports serialize to JSON") {
    auto tw = tame_tower(3, 3);
    elem pi = tw->pi(1);
    elem z0 = tw->zero(1);
    auto E = make_curve(*tw, 1, z0, pi * pi, z0, pi.pow(3), pi * pi);
    auto j = type_iv_to_json(analyze_type_IV(E, 2));
    CHECK(j["v_b8"] == 4);
    CHECK(j["split_E"] == true);
    CHECK(j["res_split"] == false);
}

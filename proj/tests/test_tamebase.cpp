#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "splitred/tamebase.hpp"

using namespace splitred;

TEST_CASE("elliptic stabilization index table") {
    CHECK(elliptic_stabilization_index(parse_kodaira("good")) == 1);
    CHECK(elliptic_stabilization_index(parse_kodaira("I7")) == 1);
    CHECK(elliptic_stabilization_index(parse_kodaira("I0*")) == 2);
    CHECK(elliptic_stabilization_index(parse_kodaira("I4*")) == 2);
    CHECK(elliptic_stabilization_index(parse_kodaira("IV")) == 3);
    CHECK(elliptic_stabilization_index(parse_kodaira("IV*")) == 3);
    CHECK(elliptic_stabilization_index(parse_kodaira("III")) == 4);
    CHECK(elliptic_stabilization_index(parse_kodaira("III*")) == 4);
    CHECK(elliptic_stabilization_index(parse_kodaira("II")) == 6);
    CHECK(elliptic_stabilization_index(parse_kodaira("II*")) == 6);
    // always at most 6
    for (const char* s : {"good", "I3", "I0*", "IV", "IV*", "III", "III*", "II", "II*"})
        CHECK(elliptic_stabilization_index(parse_kodaira(s)) <= 6);
}

TEST_CASE("stabilization rescaling") {
    CHECK(stabilization_rescale(6, 3, 2) == 2);
    CHECK(stabilization_rescale(4, 2, 3) == 2);
    for (long e : {1l, 2l, 3l, 4l, 6l}) CHECK(stabilization_rescale(e, 1, 5) == e);
    CHECK_THROWS_AS(stabilization_rescale(6, 4, 5), not_divisor);
    CHECK_THROWS_AS(stabilization_rescale(6, 3, 3), not_tame);
}

TEST_CASE("rescaling composes") {
    for (long e : {4l, 6l, 12l}) {
        for (long a = 1; a <= e; ++a) {
            if (e % a != 0 || std::gcd(a, 5l) != 1) continue;
            long ea = stabilization_rescale(e, a, 5);
            for (long b = 1; b <= ea; ++b) {
                if (ea % b != 0 || std::gcd(b, 5l) != 1) continue;
                CHECK(stabilization_rescale(ea, b, 5) == stabilization_rescale(e, a * b, 5));
            }
        }
    }
}

TEST_CASE("tame component-group growth") {
    CHECK(tame_phi_order(5, 0, 7, 2) == 5);
    CHECK(tame_phi_order(1, 2, 3, 2) == 9);
    CHECK_THROWS_AS(tame_phi_order(1, 1, 3, 3), error);
    // the p-part is preserved
    auto vp = [](long n, long p) {
        long v = 0;
        while (n % p == 0) {
            n /= p;
            ++v;
        }
        return v;
    };
    for (long phi : {1l, 2l, 4l, 6l, 12l})
        for (long t : {0l, 1l, 2l})
            for (long ratio : {1l, 3l, 5l})
                CHECK(vp(tame_phi_order(phi, t, ratio, 2), 2) == vp(phi, 2));
}

TEST_CASE("Jacobian split certificate") {
    CHECK(jacobian_split_certificate(2, 3, 2) == split_guarantee::SplitGuaranteed);
    CHECK(jacobian_split_certificate(6, 5, 2) == split_guarantee::NoGuarantee);
    CHECK_THROWS_AS(jacobian_split_certificate(2, 4, 2), not_tame);
    // genus 1: every tame d >= 7 splits regardless of type
    for (const char* s : {"good", "I3", "I0*", "IV", "IV*", "III", "III*", "II", "II*"}) {
        long e = elliptic_stabilization_index(parse_kodaira(s));
        for (long d = 7; d <= 12; ++d) {
            if (std::gcd(d, 2l) != 1) continue;
            CHECK(jacobian_split_certificate(e, d, 2) == split_guarantee::SplitGuaranteed);
        }
    }
}

TEST_CASE("Jacobian certificate is monotone in d") {
    for (unsigned p : {2u, 3u}) {
        for (long e = 1; e <= 6; ++e) {
            long first = 0;
            for (long d = 1; d <= 12; ++d) {
                if (std::gcd(d, static_cast<long>(p)) != 1) continue;
                auto g = jacobian_split_certificate(e, d, p);
                if (g == split_guarantee::SplitGuaranteed && first == 0) first = d;
                if (first != 0 && d >= first)
                    CHECK(g == split_guarantee::SplitGuaranteed);
            }
            CHECK(first != 0); // some tame degree <= 12 always works (e <= 6)
        }
    }
}

TEST_CASE("elliptic split decision: d > [L:K] always splits on valid inputs") {
    // exhaustive walk over the finite decision table
    struct row {
        const char* type;
        long L_degree;
    };
    std::vector<row> rows = {{"good", 1}, {"I5", 1},   {"I0*", 2},  {"I2*", 2},
                             {"IV", 3},   {"IV*", 3},  {"IV", 6},   {"IV*", 6},
                             {"III", 4},  {"III*", 4}, {"II", 6},   {"II*", 6},
                             {"II", 2},   {"III", 2},  {"III*", 2}, {"II*", 2}};
    for (const auto& r : rows) {
        for (long d = r.L_degree + 1; d <= 12; ++d) {
            for (unsigned p : {2u, 3u, 5u}) {
                if (std::gcd(d, static_cast<long>(p)) != 1) continue;
                kodaira t = parse_kodaira(r.type);
                bool additive = t.t != kodaira::good && t.t != kodaira::I_n;
                if (additive && d == 2) continue; // no valid [L:K] = 1 input
                for (long delta : {0l, 2l}) {
                    auto dec = elliptic_split_after(t, r.L_degree, delta, 6, d, p);
                    CHECK(dec.split);
                    CHECK_FALSE(dec.branch.empty());
                }
            }
        }
    }
}

TEST_CASE("elliptic split decision: named branches and inconsistencies") {
    auto dec = elliptic_split_after(parse_kodaira("II"), 2, 0, 2, 3, 2);
    CHECK(dec.split);
    CHECK(dec.branch.find("tame") != std::string::npos);

    auto far = elliptic_split_after(parse_kodaira("II"), 2, 1, 3, 5, 2);
    CHECK(far.split);
    CHECK(far.branch.find(">= 4") != std::string::npos);

    auto star = elliptic_split_after(parse_kodaira("I2*"), 2, 2, 10, 3, 2);
    CHECK(star.split);

    CHECK_THROWS_AS(elliptic_split_after(parse_kodaira("IV"), 2, 1, 5, 3, 2),
                    input_inconsistent);
    CHECK_THROWS_AS(elliptic_split_after(parse_kodaira("IV*"), 2, 1, 5, 3, 2),
                    input_inconsistent);
    CHECK_THROWS_AS(elliptic_split_after(parse_kodaira("III"), 2, 1, 4, 3, 2),
                    input_inconsistent); // delta = 1, v(Delta) = 4 pattern
    CHECK_THROWS_AS(elliptic_split_after(parse_kodaira("II"), 3, 1, 2, 3, 2),
                    error); // d <= [L:K]
    CHECK_THROWS_AS(elliptic_split_after(parse_kodaira("II"), 2, 0, 2, 4, 2), not_tame);
}

TEST_CASE("jumps summary") {
    auto r0 = jumps_summary({{0, 1}, {0, 1}}, 2);
    CHECK(r0.u == 0);
    CHECK(r0.lcm_denominator == 1);

    auto r1 = jumps_summary({{1, 2}, {1, 2}}, 3, 2);
    CHECK(r1.u == 2);
    CHECK(r1.lcm_denominator == 2);

    CHECK_THROWS_AS(jumps_summary({{1, 3}}, 2, 2), inconsistent_with_e);
    CHECK_THROWS_AS(jumps_summary({{1, 2}}, 2), denominator_not_prime_to_p);
    CHECK_THROWS_AS(jumps_summary({{3, 2}}, 5), error); // outside [0, 1)

    // lcm of denominators must divide e
    CHECK_THROWS_AS(jumps_summary({{1, 6}}, 5, 4), inconsistent_with_e);
    auto r2 = jumps_summary({{1, 6}, {1, 3}}, 5, 6);
    CHECK(r2.u == 2);
    CHECK(r2.lcm_denominator == 6);
}

TEST_CASE("tame split certificates") {
    reduction_datum d;
    d.phi_order = 3;
    d.tame = true;
    d.toric_rank = 0;
    d.semiabelian = true;
    auto certs = tame_split_certificates(d, 2);
    REQUIRE(certs.size() == 3);

    reduction_datum none;
    none.phi_order = 4; // divisible by p = 2
    none.tame = true;
    none.toric_rank = 1;
    CHECK(tame_split_certificates(none, 2).empty());

    reduction_datum phi_only;
    phi_only.phi_order = 4;
    CHECK(tame_split_certificates(phi_only, 3).size() == 1);
}

TEST_CASE("report serializes to JSON") {
    reduction_datum d;
    d.genus = 1;
    d.e = 2;
    d.type = parse_kodaira("I0*");
    d.phi_order = 4;
    d.jumps = {{1, 2}, {1, 2}};
    auto certs = tame_split_certificates(d, 3);
    auto j = tame_report_to_json(d, certs);
    CHECK(j["e"] == 2);
    CHECK(j["type"] == "I0*");
    CHECK(j["jumps"].size() == 2);
}

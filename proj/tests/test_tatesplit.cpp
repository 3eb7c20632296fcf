#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "splitred/tatesplit.hpp"

using namespace splitred;

namespace {

std::shared_ptr<tower> mixed_tower(unsigned p, unsigned d, unsigned s = 1) {
    tower_spec spec;
    spec.characteristic = 0;
    spec.p = p;
    spec.residue_degree = s;
    spec.precision = 40;
    std::vector<std::string> poly(d + 1, "0");
    poly[0] = "-" + std::to_string(p);
    poly[d] = "1";
    spec.levels.push_back({"L", d, poly});
    return make_tower(spec);
}

std::shared_ptr<tower> equal_tower(unsigned p, unsigned d, unsigned s = 1) {
    tower_spec spec;
    spec.characteristic = p;
    spec.p = p;
    spec.residue_degree = s;
    spec.precision = 40;
    std::vector<std::string> poly(d + 1, "0");
    poly[0] = "-pi_U";
    poly[d] = "1";
    spec.levels.push_back({"L", d, poly});
    return make_tower(spec);
}

std::shared_ptr<tower> zeta3_tower() {
    tower_spec spec;
    spec.characteristic = 0;
    spec.p = 3;
    spec.residue_degree = 1;
    spec.precision = 40;
    spec.levels.push_back({"L", 2, {"3", "3", "1"}});
    return make_tower(spec);
}

elem random_integral(const tower& tw, int lvl, std::mt19937& rng) {
    std::uniform_int_distribution<std::uint64_t> any(0, tw.k->order() - 1);
    std::vector<gf_ctx::elem> dg;
    for (int i = 0; i < 8; ++i) dg.push_back(tw.k->from_index(any(rng)));
    return tw.from_teich_digits(lvl, dg);
}

} // namespace

TEST_CASE("component group order is v_L(q)") {
    auto tw = mixed_tower(2, 3);
    elem pi = tw->pi(1);
    elem one = tw->one(1);
    CHECK(component_group_order(make_tate_curve(*tw, 0, 1, pi.pow(2) * (one + pi))) == 2);
    CHECK(component_group_order(make_tate_curve(*tw, 0, 1, pi)) == 1);
    CHECK(component_group_order(make_tate_curve(*tw, 0, 1, pi.pow(8) * (one + pi))) == 8);

    CHECK_THROWS_AS(make_tate_curve(*tw, 0, 1, one), error); // v(q) = 0
}

TEST_CASE("component of a point is v_L(z) mod n") {
    auto tw = mixed_tower(3, 2);
    elem pi = tw->pi(1);
    auto E = make_tate_curve(*tw, 0, 1, pi.pow(3));
    CHECK(component_of_point(E, pi) == 1);
    CHECK(component_of_point(E, E.q) == 0);
    // z = pi^{n/m} y gives a class of order m in Z/nZ
    elem y = tw->one(1) + pi;
    long c = component_of_point(E, pi.pow(1) * y); // n=3, m=3, n/m=1
    CHECK(c == 1);
    long order = 3 / std::gcd(3l, c);
    CHECK(order == 3);
    CHECK_THROWS_AS(component_of_point(E, tw->zero(1)), indistinguishable_zero);
}

TEST_CASE("lifting verdicts for the basic q's") {
    auto tw = mixed_tower(2, 3);
    elem pi = tw->pi(1);
    elem one = tw->one(1);

    auto E0 = make_tate_curve(*tw, 0, 1, pi.pow(2) * (one + pi));
    CHECK(lifts_order_m(E0, 1).answer == membership_answer::Yes);
    CHECK(lifts_order_m(E0, 2).answer == membership_answer::No);

    auto E1 = make_tate_curve(*tw, 0, 1, pi.pow(2));
    CHECK(lifts_order_m(E1, 2).answer == membership_answer::Yes);

    CHECK_THROWS_AS(lifts_order_m(E0, 3), not_divisor);
}

TEST_CASE("tame counterexample: q = pi^p(1+pi) is totally not split") {
    for (auto [p, d] : std::vector<std::pair<unsigned, unsigned>>{{2, 3}, {2, 5}, {3, 2}, {3, 4}}) {
        auto tw = mixed_tower(p, d);
        elem pi = tw->pi(1);
        elem one = tw->one(1);

        auto bad = split_status(make_tate_curve(*tw, 0, 1, pi.pow(p) * (one + pi)));
        CHECK(bad.status == split_status_kind::TotallyNotSplit);
        CHECK(bad.totally_not_split);
        CHECK_FALSE(bad.split);
        CHECK(bad.lifting_exponent == 0u);

        auto good = split_status(make_tate_curve(*tw, 0, 1, pi.pow(p)));
        CHECK(good.status == split_status_kind::Split);
        CHECK(good.split);
    }
}

TEST_CASE("cyclotomic isogeny pair") {
    auto tw = zeta3_tower();
    elem pi = tw->pi(1);
    elem zeta = tw->one(1) + pi;

    auto a = split_status(make_tate_curve(*tw, 0, 1, pi.pow(3)));
    CHECK(a.status == split_status_kind::Split);

    auto b = split_status(make_tate_curve(*tw, 0, 1, zeta * pi.pow(3)));
    CHECK_FALSE(b.split);
    CHECK(b.lifting_exponent == 0u);
    REQUIRE(!b.verdicts.empty());
    CHECK(b.verdicts.front().certificate == certificate_tag::ValuationScreen);
}

TEST_CASE("equal characteristic lifting-exponent family") {
    // q = pi^{p^n} (1 + pi^{p^m}) with m < n: exactly the order-p^m points lift
    auto tw = equal_tower(2, 5);
    elem pi = tw->pi(1);
    elem one = tw->one(1);
    for (unsigned m : {0u, 1u}) {
        elem q = pi.pow(4) * (one + pi.pow(1u << m));
        auto rep = split_status(make_tate_curve(*tw, 0, 1, q));
        CHECK(rep.r == 2);
        CHECK(rep.lifting_exponent == m);
        CHECK(rep.status == (m == 0 ? split_status_kind::TotallyNotSplit
                                    : split_status_kind::NotSplit));
    }
    // and q = pi^4 itself is split
    CHECK(split_status(make_tate_curve(*tw, 0, 1, pi.pow(4))).split);
}

TEST_CASE("order prime to p always splits") {
    std::mt19937 rng(8);
    for (auto [p, d] : std::vector<std::pair<unsigned, unsigned>>{{2, 3}, {3, 2}}) {
        auto tw = mixed_tower(p, d);
        for (long n : {1l, 3l, 5l, 7l}) {
            if (n % p == 0) continue;
            elem u = tw->one(1) + tw->pi(1) * random_integral(*tw, 1, rng);
            auto rep = split_status(
                make_tate_curve(*tw, 0, 1, tw->pi(1).pow(static_cast<unsigned long long>(n)) * u));
            CHECK(rep.status == split_status_kind::Split);
        }
    }
}

TEST_CASE("perturbation stability: q' close to q gives the same status") {
    std::mt19937 rng(99);
    auto tw = mixed_tower(2, 3);
    elem pi = tw->pi(1);
    elem one = tw->one(1);
    std::vector<elem> qs = {pi.pow(2) * (one + pi), pi.pow(2), pi.pow(4) * (one + pi),
                            pi.pow(3)};
    for (const auto& q : qs) {
        auto base = split_status(make_tate_curve(*tw, 0, 1, q));
        for (int it = 0; it < 5; ++it) {
            elem t = random_integral(*tw, 1, rng);
            elem qq = q * (one + tw->promote(tw->pi(0), 1) * t);
            auto rep = split_status(make_tate_curve(*tw, 0, 1, qq));
            CHECK(rep.status == base.status);
            CHECK(rep.lifting_exponent == base.lifting_exponent);
        }
    }
}

TEST_CASE("dimension data in the report") {
    for (unsigned d : {2u, 3u, 5u}) {
        auto tw = mixed_tower(2, d);
        auto rep = split_status(make_tate_curve(*tw, 0, 1, tw->pi(1).pow(3)));
        CHECK(rep.dim_abelian == static_cast<long>(d));
        CHECK(rep.toric_rank == 1);
        CHECK(rep.unipotent_dim == static_cast<long>(d) - 1);
        CHECK(rep.dim_abelian == rep.toric_rank + rep.unipotent_dim);
    }
}

TEST_CASE("report serializes to JSON") {
    auto tw = zeta3_tower();
    elem pi = tw->pi(1);
    auto rep = split_status(make_tate_curve(*tw, 0, 1, (tw->one(1) + pi) * pi.pow(3)));
    auto j = report_to_json(rep);
    CHECK(j["n"] == 3);
    CHECK(j["v_p_n"] == 1);
    CHECK(j["status"] == "TotallyNotSplit");
    CHECK(j["split"] == false);
    CHECK(j["verdicts"].size() == 1);
}

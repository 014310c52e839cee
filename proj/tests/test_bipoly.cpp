#include <doctest.h>

#include <random>

#include "rforge/bipoly.hpp"

using namespace rforge;

namespace {

BiPoly t(int arity, int i, int e = 1) { return BiPoly::variable(arity, i, false, e); }
BiPoly tc(int arity, int i, int e = 1) { return BiPoly::variable(arity, i, true, e); }

BiPoly random_bipoly(std::mt19937& rng, int arity, int max_deg, int n_terms) {
    std::uniform_int_distribution<int> deg(0, max_deg), coef(-6, 6);
    BiPoly p(arity);
    for (int n = 0; n < n_terms; ++n) {
        Multidegree h(arity), a(arity);
        for (int i = 0; i < arity; ++i) {
            h[i] = deg(rng);
            a[i] = deg(rng);
        }
        p.add_term({h, a}, Scalar(GaussianRational(rat(coef(rng)), rat(coef(rng)))));
    }
    return p;
}

}  // namespace

TEST_CASE("wirtinger derivative basics") {
    // d/dt1 (t1^2) = 2 t1
    CHECK(t(2, 1, 2).wirtinger_derive(1, false) == t(2, 1) * Scalar(2));
    // d/dt1 (~t1) = 0
    CHECK(tc(2, 1).wirtinger_derive(1, false).is_zero());
    // d/d~t2 (t1 ~t2^3) = 3 t1 ~t2^2
    CHECK((t(2, 1) * tc(2, 2, 3)).wirtinger_derive(2, true) == t(2, 1) * tc(2, 2, 2) * Scalar(3));
    CHECK_THROWS_AS(t(2, 1).wirtinger_derive(3, false), argument_error);
}

TEST_CASE("wirtinger satisfies the Leibniz rule on random pairs") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        int arity = 1 + trial % 3;
        BiPoly p = random_bipoly(rng, arity, 6, 4);
        BiPoly q = random_bipoly(rng, arity, 6, 4);
        for (int v = 1; v <= arity; ++v)
            for (bool conj : {false, true}) {
                BiPoly lhs = (p * q).wirtinger_derive(v, conj);
                BiPoly rhs = p.wirtinger_derive(v, conj) * q + p * q.wirtinger_derive(v, conj);
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("substitution composes exactly") {
    // pullback of z2 - z1^2 under t -> (t^2, t^3) is t^3 - t^4
    BiPoly amb = BiPoly::variable(2, 2) - BiPoly::variable(2, 1).pow(2);
    std::vector<BiPoly> cusp = {t(1, 1, 2), t(1, 1, 3)};
    CHECK(amb.substitute(cusp) == t(1, 1, 3) - t(1, 1, 4));

    // conjugates route through conj of the substituted map
    BiPoly w = BiPoly::variable(1, 1, true);  // ~z1 in a 1-variable ambient
    std::vector<BiPoly> sq = {t(1, 1, 2)};
    CHECK(w.substitute(sq) == tc(1, 1, 2));
}

TEST_CASE("evaluation respects formal conjugation") {
    BiPoly p = t(1, 1) * tc(1, 1);  // |t|^2 formally
    GaussianRational v(rat(1, 2), rat(1, 3));
    CHECK(p.evaluate({v}) == Scalar(v * v.conj()));
}

TEST_CASE("shift recenters exactly") {
    BiPoly p = t(1, 1, 2);
    BiPoly sh = p.shift({GaussianRational(rat(3))});
    CHECK(sh.evaluate({GaussianRational(rat(-1))}) == Scalar(GaussianRational(rat(4))));
}

TEST_CASE("polynomial text grammar round-trips") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        BiPoly p = random_bipoly(rng, 1 + trial % 3, 5, 5);
        BiPoly q = bipoly_from_string(p.str(), p.arity());
        CHECK(p == q);
    }
    CHECK(bipoly_from_string("t1^2 - t2^3", 2) == t(2, 1, 2) - t(2, 2, 3));
    CHECK(bipoly_from_string("(1+s1)*s2", 2, "s") ==
          (BiPoly::constant(2, Scalar(1)) + t(2, 1)) * t(2, 2));
    CHECK(bipoly_from_string("3/2*t1*~t1", 1) == t(1, 1) * tc(1, 1) * Scalar(GaussianRational(rat(3, 2))));
}

TEST_CASE("monomial content and division") {
    BiPoly p = t(2, 1, 2) * t(2, 2) + t(2, 1, 3) * t(2, 2, 2);
    Multidegree content = p.holo_content();
    CHECK(content == Multidegree{2, 1});
    CHECK(p.divide_monomial(1, 2).divide_monomial(2, 1) ==
          BiPoly::constant(2, Scalar(1)) + t(2, 1) * t(2, 2));
    CHECK_THROWS_AS(p.divide_monomial(1, 3), argument_error);
}

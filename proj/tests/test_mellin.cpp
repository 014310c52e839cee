#include <doctest.h>

#include <random>

#include "rforge/mellin.hpp"

using namespace rforge;

namespace {

BiPoly P(const std::string& s, int k) { return bipoly_from_string(s, k); }

LambdaFactor res(const std::string& f, int k) { return {P(f, k), true}; }
LambdaFactor pv(const std::string& f, int k) { return {P(f, k), false}; }

ScalarSum tau_pow(int p, long num = 1, long den = 1) {
    return ScalarSum(Scalar(GaussianRational(rat(num, den)), p));
}

}  // namespace

TEST_CASE("oracle: one-variable golden identities") {
    auto v1 = mellin_pair({res("t1", 1)}, TestForm(1, P("1", 1), {1}, {}));
    CHECK(v1.value == tau_pow(1));
    CHECK_FALSE(v1.cutoff_dependent);

    auto v2 = mellin_pair({res("t1^2", 1)}, TestForm(1, P("t1", 1), {1}, {}));
    CHECK(v2.value == tau_pow(1));

    auto v3 = mellin_pair({res("t1^3", 1)}, TestForm(1, P("1/2*t1^2", 1), {1}, {}));
    CHECK(v3.value == tau_pow(1, 1, 2));

    // conjugate content dies in the continuation
    auto v4 = mellin_pair({res("t1", 1)}, TestForm(1, P("~t1", 1), {1}, {}));
    CHECK(v4.value.is_zero());
}

TEST_CASE("oracle: principal value finite parts are cutoff-dependent") {
    // <PV(1/t), t chi dt^~dt> = int chi dt^~dt = -4 pi i int r chi dr
    auto v = mellin_pair({pv("t1", 1)}, TestForm(1, P("t1", 1), {1}, {1}),
                         CutoffModel::smooth_bump, rat(1));
    CHECK(v.cutoff_dependent);
    REQUIRE(v.value.parts().size() == 1);
    auto it = v.value.parts().begin();
    CHECK(it->first == 1);
    CHECK(it->second.re < 0);  // -2 * (positive radial mass)

    // sharp polydisc: int_0^1 r dr = 1/2, so the value is exactly -tau
    auto s = mellin_pair({pv("t1", 1)}, TestForm(1, P("t1", 1), {1}, {1}),
                         CutoffModel::sharp_polydisc);
    CHECK(s.value == ScalarSum(Scalar(GaussianRational(-1), 1)));
}

TEST_CASE("oracle: the unit-twisted two-variable product (normalization adjudication)") {
    // dbar(1/((1+s)t)) ^ dbar(1/s^2) against phi(s^2,s^3,t) 2s ds ^ dt with
    // phi == 1: the continuation gives 2 tau^2 = 2 (2 pi i)^2.
    auto v = mellin_pair({res("t1^2", 2), res("(1+t1)*t2", 2)},
                         TestForm(2, P("2*t1", 2), {1, 2}, {}));
    CHECK(v.value == tau_pow(2, 2));
    CHECK_FALSE(v.cutoff_dependent);
}

TEST_CASE("oracle: PV factor meeting its residue variable annihilates") {
    auto v = mellin_pair({res("t1", 1), pv("t1", 1)}, TestForm(1, P("1", 1), {1}, {}));
    CHECK(v.value.is_zero());
}

TEST_CASE("oracle: residue onto a standing PV factor merges exponents") {
    // lambda_1 on PV(1/t), then a residue factor on t: acts like dbar(1/t^2)
    auto v = mellin_pair({pv("t1", 1), res("t1", 1)}, TestForm(1, P("t1", 1), {1}, {}));
    CHECK(v.value == tau_pow(1));
    auto z = mellin_pair({pv("t1", 1), res("t1", 1)}, TestForm(1, P("1", 1), {1}, {}));
    CHECK(z.value.is_zero());
}

TEST_CASE("oracle: tensor products and PV spectators") {
    auto v = mellin_pair({res("t1", 2), res("t2", 2)}, TestForm(2, P("1", 2), {1, 2}, {}));
    CHECK(v.value == tau_pow(2));  // dbar(1/t2)^dbar(1/t1).(dt1^dt2) = tau^2

    // PV(1/t1) dbar(1/t2) against t1 dt1^dt2^~dt1: the PV variable carries the
    // finite part; the residue variable is exact.
    auto w = mellin_pair({res("t2", 2), pv("t1", 2)},
                         TestForm(2, P("t1", 2), {1, 2}, {1}), CutoffModel::sharp_polydisc);
    CHECK(w.cutoff_dependent);
    CHECK_FALSE(w.value.is_zero());
}

TEST_CASE("oracle agrees with the rewrite engine on random point-supported data") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> e1(1, 3), e2(1, 2), cf(1, 5), deg(0, 2);
    for (int trial = 0; trial < 12; ++trial) {
        int a = e1(rng), b = e2(rng);
        std::string f1 = "t1^" + std::to_string(a);
        std::string f2 = "t2^" + std::to_string(b);

        // engine route
        ResidueExpr ch =
            dbar_wedge(factor_monomial_unit(P(f2, 2)),
                       dbar_wedge(factor_monomial_unit(P(f1, 2)), ResidueExpr::unit(2)));
        // random monomial test coefficient
        int p = deg(rng), q = deg(rng), c = cf(rng);
        BiPoly coeff = BiPoly::monomial(2, {p, q}, {0, 0}, Scalar(GaussianRational(rat(c))));
        TestForm phi(2, coeff, {1, 2}, {});

        ScalarSum engine = evaluate(ch, phi);
        auto oracle = mellin_pair({{P(f1, 2), true}, {P(f2, 2), true}}, phi);
        CHECK(engine == oracle.value);
        CHECK_FALSE(oracle.cutoff_dependent);
    }
}

TEST_CASE("oracle confirms conjugate-ideal annihilation on residue support") {
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> e(1, 3), deg(0, 2);
    for (int trial = 0; trial < 10; ++trial) {
        std::string f1 = "t1^" + std::to_string(e(rng));
        // coefficient divisible by ~t1 pairs to zero against a residue in t1
        BiPoly coeff = BiPoly::monomial(2, {deg(rng), deg(rng)}, {1, 0}, Scalar(1));
        auto v = mellin_pair({{P(f1, 2), true}, {P("t2", 2), true}},
                             TestForm(2, coeff, {1, 2}, {}));
        CHECK(v.value.is_zero());
    }
}

#include <doctest.h>

#include <random>

#include "rforge/coleff_herrera.hpp"

using namespace rforge;

namespace {

BiPoly P(const std::string& s, int k) { return bipoly_from_string(s, k); }

ScalarSum tau_pow(int p, long num = 1, long den = 1) {
    return ScalarSum(Scalar(GaussianRational(rat(num, den)), p));
}

const SpacePresentation& plane() {
    static SpacePresentation s(2, {NormalizationChart{2, {P("t1", 2), P("t2", 2)}}});
    return s;
}

const SpacePresentation& exch() {
    static SpacePresentation s(3, {NormalizationChart{2, {P("t1^2", 2), P("t1^3", 2), P("t2", 2)}}});
    return s;
}

WeakFunction wf(const SpacePresentation& s, const std::string& pullback, std::string name = {}) {
    return make_weak_function(s, {ChartFn::poly(P(pullback, s.charts[0].arity))}, std::nullopt,
                              std::move(name));
}

}  // namespace

TEST_CASE("ch_product: coordinate tuple and the twisted worked example") {
    CHSpec coords{{wf(plane(), "t1"), wf(plane(), "t2")}, 2};
    CurrentOnSpace T = ch_product(coords);
    CHECK(T.canonical_upstairs);
    CHECK(evaluate(T.charts[0], TestForm(2, P("1", 2), {1, 2}, {})) == tau_pow(2));

    CHSpec tw{{wf(exch(), "t1^2"), wf(exch(), "(1+t1)*t2")}, 2};
    CurrentOnSpace S = ch_product(tw);
    REQUIRE(S.charts[0].terms.size() == 1);
    CHECK(S.charts[0].terms[0].res == std::vector<int>{2, 1});
    CHECK(S.charts[0].terms[0].unit_den == P("1+t1", 2));
    // pairing against phi(s^2,s^3,t) ds^2 ^ dt with phi = 1
    CHECK(evaluate(S.charts[0], TestForm(2, P("2*t1", 2), {1, 2}, {})) == tau_pow(2, 2));
}

TEST_CASE("ch_product on the cusp: dbar(1/f) alone versus dbar(1/f)^df") {
    SpacePresentation cusp(2, {NormalizationChart{1, {P("t1^2", 1), P("t1^3", 1)}}});
    CHSpec spec{{wf(cusp, "t1")}, 1};
    CurrentOnSpace T = ch_product(spec);

    // dz-pairings vanish
    for (const auto& phi : ambient_forms_up_to(2, 2)) CHECK(pushforward_pair(T, phi).is_zero());

    // wedging with df (pullback dt) produces the point mass 2 pi i
    CurrentOnSpace Tdf = T;
    for (auto& t : Tdf.charts[0].terms) t.form_holo = {1};
    AmbientForm unit_form;
    unit_form.alpha = {0, 0};
    unit_form.beta = {0, 0};
    CHECK(pushforward_pair(Tdf, unit_form) == tau_pow(1));
}

TEST_CASE("Leibniz rule and support certificate") {
    // m = 2, p = 1: dbar(PV(1/t2) dbar(1/t1)) = dbar(1/t2)^dbar(1/t1)
    CHSpec spec{{wf(plane(), "t1"), wf(plane(), "t2")}, 1};
    CHECK(check_leibniz(spec).ok());

    // m = p: dbar of a full residue product is zero
    CHSpec full{{wf(plane(), "t1"), wf(plane(), "t2")}, 2};
    CHECK(check_leibniz(full).ok());
    CHECK(dbar_expr(ch_product(full).charts[0]).is_zero());

    // the twisted example: support certificate at the origin
    CHSpec tw{{wf(exch(), "t1^2"), wf(exch(), "(1+t1)*t2")}, 2};
    CHECK(check_leibniz(tw).ok());

    // PV factors with conjugate coefficients still satisfy the rule
    CHSpec mixed{{wf(plane(), "t1"), wf(plane(), "t2^2")}, 1};
    CHECK(check_leibniz(mixed).ok());
}

TEST_CASE("commutation: residue factors anticommute, PV factors commute") {
    CHSpec spec{{wf(plane(), "t1"), wf(plane(), "t2")}, 2};
    CHECK(check_commutation(spec, {2, 1}, 4).ok());

    CHSpec half{{wf(plane(), "t1"), wf(plane(), "t2")}, 1};
    CHECK(check_commutation(half, {2, 1}, 4).ok());

    CHSpec bad{{wf(plane(), "t1"), wf(plane(), "t1")}, 2};
    Report r = check_commutation(bad, {2, 1}, 4);
    CHECK(r.status == Report::Status::skipped);
    CHECK(r.reason.find("complete intersection") != std::string::npos);
}

TEST_CASE("annihilation and PV absorption") {
    // f_j T = 0 for residue factors
    CHSpec spec{{wf(plane(), "t1^2"), wf(plane(), "t2")}, 2};
    CHECK(check_annihilation(spec, 1, 4).ok());
    CHECK(check_annihilation(spec, 2, 4).ok());

    // the twisted example: f_2 CH = 0
    CHSpec tw{{wf(exch(), "t1^2"), wf(exch(), "(1+t1)*t2")}, 2};
    CHECK(check_annihilation(tw, 2, 4).ok());

    // PV absorption: f_2 (PV(1/f_2) dbar(1/f_1)) = dbar(1/f_1)
    CHSpec half{{wf(plane(), "t1"), wf(plane(), "t2")}, 1};
    CHECK(check_annihilation(half, 2, 4).ok());
}

TEST_CASE("transformation law on the unipotent fixture") {
    // f = (t1, t2), A = [[1,0],[t1,1]], g = (t1, t1^2 + t2); the g-side is
    // computed through the transported chart u = (t1, t2 + t1^2).
    ChartAutomorphism phi{{P("t1", 2), P("t2 + t1^2", 2)}, {P("t1", 2), P("t2 - t1^2", 2)}};
    SpacePresentation gspace = transported_presentation(plane(), phi);

    CHSpec f_spec{{wf(plane(), "t1", "f1"), wf(plane(), "t2", "f2")}, 2};
    CHSpec g_spec{{wf(gspace, "t1", "g1"), wf(gspace, "t2", "g2")}, 2};

    std::vector<WeakFunction> f_on_g = {wf(gspace, "t1"), wf(gspace, "t2 - t1^2")};
    std::vector<std::vector<WeakFunction>> A = {
        {wf(gspace, "1"), wf(gspace, "0")},
        {wf(gspace, "t1"), wf(gspace, "1")},
    };
    CHECK(transformation_check(f_spec, g_spec, A, f_on_g, 4).ok());

    // identity matrix: trivially equal
    std::vector<std::vector<WeakFunction>> I = {
        {wf(plane(), "1"), wf(plane(), "0")},
        {wf(plane(), "0"), wf(plane(), "1")},
    };
    CHECK(transformation_check(f_spec, f_spec, I, {wf(plane(), "t1"), wf(plane(), "t2")}, 3).ok());

    // non-CI g is gated off
    ChartAutomorphism id{{P("t1", 2), P("t2", 2)}, {P("t1", 2), P("t2", 2)}};
    CHSpec g_bad{{wf(plane(), "t1", "g1"), wf(plane(), "t1*t2", "g2")}, 2};
    std::vector<std::vector<WeakFunction>> D = {
        {wf(plane(), "1"), wf(plane(), "0")},
        {wf(plane(), "0"), wf(plane(), "t1")},
    };
    Report r = transformation_check(f_spec, g_bad, D, {wf(plane(), "t1"), wf(plane(), "t2")}, 3);
    CHECK(r.status == Report::Status::skipped);
}

TEST_CASE("push-forward independence across modification charts") {
    // The coordinate tuple computed on the identity chart versus the chart
    // (u1 (1 + c u2^d), u2), a modification of the plane on which both
    // pullbacks stay monomial x unit.  Same factor order on both sides.
    std::mt19937 rng(8);
    std::uniform_int_distribution<int> coef(1, 3), deg(1, 2);
    CurrentOnSpace base =
        ch_product_ordered({wf(plane(), "t2"), wf(plane(), "t1")}, {true, true});
    for (int trial = 0; trial < 10; ++trial) {
        int c = coef(rng), d = deg(rng);
        std::string twist = "1 + " + std::to_string(c) + "*t2^" + std::to_string(d);
        SpacePresentation moved(
            2, {NormalizationChart{2, {bipoly_from_string("(" + twist + ")*t1", 2), P("t2", 2)}}});
        CurrentOnSpace other = ch_product_ordered(
            {wf(moved, "t2"), wf(moved, "(" + twist + ")*t1")}, {true, true});
        CompareReport cr = compare_on_Z(base, other, 4);
        CHECK(cr.equal);
        CHECK(cr.skipped_forms == 0);
    }
}

TEST_CASE("alternating pairing values under residue permutations") {
    CHSpec spec{{wf(plane(), "t1^2"), wf(plane(), "t2")}, 2};
    CurrentOnSpace T = ch_product(spec);
    std::vector<WeakFunction> swapped = {spec.tuple[1], spec.tuple[0]};
    CurrentOnSpace S = ch_product_ordered(swapped, {true, true});
    std::mt19937 rng(15);
    std::uniform_int_distribution<int> d(0, 2);
    for (int n = 0; n < 10; ++n) {
        BiPoly c = BiPoly::monomial(2, {d(rng), d(rng)}, {0, 0}, Scalar(1));
        TestForm phi(2, c, {1, 2}, {});
        ScalarSum a = evaluate(T.charts[0], phi);
        ScalarSum b = evaluate(S.charts[0], phi);
        CHECK(a == -b);
    }
}

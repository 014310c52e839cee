#include <doctest.h>

#include "rforge/toric.hpp"

using namespace rforge;

namespace {
BiPoly P(const std::string& s, int k) { return bipoly_from_string(s, k); }

ScalarSum tau_pow(int p, long num = 1, long den = 1) {
    return ScalarSum(Scalar(GaussianRational(rat(num, den)), p));
}
}  // namespace

TEST_CASE("already-monomial tuples give the identity atlas") {
    ResolutionAtlas a = monomialize({P("t1", 2), P("t2", 2)});
    REQUIRE(a.charts.size() == 1);
    CHECK(a.charts[0].M == Eigen::MatrixXi::Identity(2, 2));
    CHECK(atlas_partitions_orthant(a));

    ResolutionAtlas b = monomialize({P("(1+t1)*t2^2", 2)});
    CHECK(b.charts.size() == 1);
}

TEST_CASE("min-structure atlas subdivides along the tie ray") {
    // f = (t1^2, t2^3): tie ray (3,2); smooth refinement inserts (2,1) and (1,1)
    ResolutionAtlas a = min_structure_atlas({P("t1^2", 2), P("t2^3", 2)});
    CHECK(atlas_partitions_orthant(a));
    REQUIRE(a.charts.size() == 4);
    bool has_tie = false;
    for (const auto& c : a.charts)
        for (int col = 0; col < 2; ++col)
            if (c.M(0, col) == 3 && c.M(1, col) == 2) has_tie = true;
    CHECK(has_tie);
    // on each chart one monomial divides the other
    for (const auto& c : a.charts) {
        Multidegree m1 = c.factor_data[0].expo, m2 = c.factor_data[1].expo;
        bool le = m1[0] <= m2[0] && m1[1] <= m2[1];
        bool ge = m1[0] >= m2[0] && m1[1] >= m2[1];
        CHECK((le || ge));
    }
}

TEST_CASE("cusp binomial resolves within the blow-up budget") {
    ResolutionAtlas a = monomialize({P("t2^2 - t1^3", 2)});
    CHECK(atlas_partitions_orthant(a));
    CHECK(a.charts.size() <= 6);
    // atlas correctness: recorded factorizations reproduce the pullbacks
    for (const auto& c : a.charts) {
        BiPoly pulled = c.pull(P("t2^2 - t1^3", 2));
        BiPoly mono = BiPoly::monomial(2, c.factor_data[0].expo, Multidegree(2, 0), Scalar(1));
        CHECK(pulled == mono * c.factor_data[0].unit.num());
        CHECK_FALSE(c.factor_data[0].unit.num().constant_term().is_zero());
    }
}

TEST_CASE("blow-up budget exhaustion is loud") {
    CHECK_THROWS_AS(monomialize({P("t2^2 - t1^3", 2)}, 1), resolution_error);
}

TEST_CASE("cone-partitioned continuation reproduces the unresolved residue value") {
    // dbar(1/t2)^dbar(1/t1) . chi dt1^dt2 computed through the 2-chart atlas
    // along the ray (1,1) equals the direct value tau^2.
    ResolutionAtlas atlas = min_structure_atlas({P("t1", 2), P("t2", 2)});
    CHECK(atlas.charts.size() == 2);
    std::vector<LambdaFactor> fs = {{P("t1", 2), true}, {P("t2", 2), true}};
    TestForm phi(2, P("1", 2), {1, 2}, {});
    OracleValue via_atlas = toric_lambda_pairing(atlas, fs, phi);
    OracleValue direct = mellin_pair(fs, phi, CutoffModel::sharp_polydisc);
    CHECK(via_atlas.value == direct.value);
    CHECK(via_atlas.value == tau_pow(2));
}

TEST_CASE("multi-variable dbar rule certified against the toric oracle") {
    // dbar(1/(t1 t2)) expands by the one-lambda rule; its cone-restricted
    // iterated continuation through two different atlases agrees.
    std::vector<LambdaFactor> f = {{P("t1*t2", 2), true}};
    ResolutionAtlas fine = min_structure_atlas({P("t1", 2), P("t2", 2)});
    for (int a = 0; a <= 1; ++a)
        for (int b = 0; b <= 1; ++b) {
            BiPoly coeff = BiPoly::monomial(2, {a, b}, {a, b}, Scalar(1));
            TestForm phi(2, coeff, {1, 2}, {1, 2});
            OracleValue direct = mellin_pair(f, phi, CutoffModel::sharp_polydisc);
            OracleValue via_atlas = toric_lambda_pairing(fine, f, phi);
            CHECK(direct.value == via_atlas.value);
        }
}

TEST_CASE("push-forward independence between two valid atlases") {
    // the (t1, t2) continuation through the min-structure atlas of t1*t2 and
    // through a strictly finer subdivision gives identical pairings
    std::vector<LambdaFactor> fs = {{P("t1", 2), true}, {P("t2", 2), true}};
    ResolutionAtlas a1 = min_structure_atlas({P("t1", 2), P("t2", 2)});
    ResolutionAtlas a2 = min_structure_atlas({P("t1", 2), P("t2", 2), P("t1^2", 2)});
    CHECK(a2.charts.size() > a1.charts.size());
    for (int d = 0; d <= 2; ++d) {
        TestForm phi(2, BiPoly::monomial(2, {d, 0}, {d, 0}, Scalar(1)), {1, 2}, {1, 2});
        OracleValue v1 = toric_lambda_pairing(a1, fs, phi);
        OracleValue v2 = toric_lambda_pairing(a2, fs, phi);
        CHECK(v1.value == v2.value);
    }
}

TEST_CASE("identity atlas reduces to the direct push-forward pairing") {
    ResolutionAtlas atlas = monomialize({P("t1", 2), P("t2", 2)});
    NormalizationChart identity{2, {P("t1", 2), P("t2", 2)}};
    ResidueExpr ch = dbar_wedge(factor_monomial_unit(P("t2", 2)),
                                dbar_wedge(factor_monomial_unit(P("t1", 2)), ResidueExpr::unit(2)));
    AmbientForm vol;
    vol.alpha = {0, 0};
    vol.beta = {0, 0};
    vol.holo = {1, 2};
    ScalarSum via_atlas = pushforward_from_atlas(atlas, identity, {ch}, vol);

    SpacePresentation plane(2, {identity});
    CurrentOnSpace T{&plane, {ch}, true};
    CHECK(via_atlas == pushforward_pair(T, vol));
    CHECK(via_atlas == tau_pow(2));
}

TEST_CASE("terms on a sibling-owned cone face are rejected loudly") {
    ResolutionAtlas atlas = min_structure_atlas({P("t1", 2), P("t2", 2)});
    REQUIRE(atlas.charts.size() == 2);
    NormalizationChart identity{2, {P("t1", 2), P("t2", 2)}};

    // the interior ray (1,1) is a generator of both charts; exactly one owns it
    int owner = -1, other = -1;
    for (int c = 0; c < 2; ++c) {
        int j = -1;
        for (int col = 0; col < 2; ++col)
            if (atlas.charts[c].M(0, col) == 1 && atlas.charts[c].M(1, col) == 1) j = col + 1;
        REQUIRE(j > 0);
        if (atlas.charts[c].owns_axis(j, atlas.charts))
            owner = c;
        else
            other = c;
    }
    REQUIRE(owner >= 0);
    REQUIRE(other >= 0);

    auto axis_term = [&](int chart_index) {
        int j = -1;
        for (int col = 0; col < 2; ++col)
            if (atlas.charts[chart_index].M(0, col) == 1 && atlas.charts[chart_index].M(1, col) == 1)
                j = col + 1;
        ResidueExpr e(2);
        ResidueTerm t(2);
        t.res[j - 1] = 1;
        t.coeff = BiPoly::monomial(2, {0, 0}, {0, 0}, Scalar(1));
        e.terms.push_back(t);
        return e;
    };

    std::vector<ResidueExpr> bad(2, ResidueExpr::zero(2));
    bad[other] = axis_term(other);
    AmbientForm vol;
    vol.alpha = {0, 0};
    vol.beta = {0, 0};
    vol.holo = {1, 2};
    vol.anti = {1};
    CHECK_THROWS_AS(pushforward_from_atlas(atlas, identity, bad, vol), argument_error);

    std::vector<ResidueExpr> good(2, ResidueExpr::zero(2));
    good[owner] = axis_term(owner);
    CHECK_NOTHROW(pushforward_from_atlas(atlas, identity, good, vol));
}

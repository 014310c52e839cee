#include <doctest.h>

#include <random>

#include "rforge/groebner.hpp"
#include "rforge/linsolve.hpp"

using namespace rforge;

namespace {

BiPoly P(const std::string& s, int k) { return bipoly_from_string(s, k); }

BiPoly random_holo(std::mt19937& rng, int arity, int max_deg, int n_terms) {
    std::uniform_int_distribution<int> deg(0, max_deg), coef(-5, 5);
    BiPoly p(arity);
    for (int n = 0; n < n_terms; ++n) {
        Multidegree h(arity);
        for (int i = 0; i < arity; ++i) h[i] = deg(rng);
        p.add_term({h, Multidegree(arity, 0)}, Scalar(GaussianRational(rat(coef(rng)))));
    }
    return p;
}

// Degree-bounded membership oracle: solve p = sum c_i g_i with deg c_i <= bound
// by exact linear algebra over the monomial basis.
bool brute_force_membership(const BiPoly& p, const std::vector<BiPoly>& gens, int bound) {
    int k = p.arity();
    std::vector<Multidegree> cof_monos;
    std::function<void(Multidegree&, int, int)> gen = [&](Multidegree& m, int pos, int left) {
        if (pos == k) {
            cof_monos.push_back(m);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            m[pos] = e;
            gen(m, pos + 1, left - e);
        }
        m[pos] = 0;
    };
    Multidegree scratch(k, 0);
    gen(scratch, 0, bound);

    // Collect the row space: all monomials reachable by cof * gen or in p.
    std::map<Multidegree, int> row_index;
    auto row_of = [&](const Multidegree& m) {
        auto it = row_index.find(m);
        if (it == row_index.end()) it = row_index.emplace(m, (int)row_index.size()).first;
        return it->second;
    };
    struct Entry {
        int row, col;
        GaussianRational v;
    };
    std::vector<Entry> entries;
    int col = 0;
    for (const BiPoly& g : gens)
        for (const Multidegree& cm : cof_monos) {
            for (const auto& [key, c] : g.terms()) {
                Multidegree m = key.holo;
                for (int i = 0; i < k; ++i) m[i] += cm[i];
                entries.push_back({row_of(m), col, c.coef});
            }
            ++col;
        }
    for (const auto& [key, c] : p.terms()) row_of(key.holo);

    LinearSystem sys((int)row_index.size(), col);
    for (const auto& e : entries) sys.at(e.row, e.col) += e.v;
    for (const auto& [key, c] : p.terms()) sys.b[row_of(key.holo)] = c.coef;
    return solve(std::move(sys)).has_value();
}

}  // namespace

TEST_CASE("reduced bases of the worked ideals") {
    GroebnerBasis g1 = buchberger(Ideal(2, {P("t1^2", 2), P("t2", 2)}));
    REQUIRE(g1.elements().size() == 2);
    CHECK(g1.contains(P("t2", 2)));
    CHECK(g1.contains(P("t1^2", 2)));
    CHECK_FALSE(g1.contains(P("t1", 2)));

    GroebnerBasis g2 = buchberger(Ideal(2, {P("t1^2 - t2^3", 2)}));
    CHECK(g2.elements().size() == 1);
    CHECK(g2.contains(P("t1^2 - t2^3", 2)));

    GroebnerBasis g3 = buchberger(Ideal(2, {P("t1*t2", 2), P("t1^2", 2)}));
    // leading-term ideal stays <t1*t2, t1^2>
    REQUIRE(g3.elements().size() == 2);
    std::vector<Multidegree> lms;
    for (const auto& e : g3.elements()) lms.push_back(g3.leading_monomial(e));
    CHECK(std::count(lms.begin(), lms.end(), Multidegree{1, 1}) == 1);
    CHECK(std::count(lms.begin(), lms.end(), Multidegree{2, 0}) == 1);
}

TEST_CASE("dimension of leading-term ideals") {
    CHECK(buchberger(Ideal(2, {P("t1^2", 2), P("t2", 2)})).dimension() == 0);
    CHECK(buchberger(Ideal(2, {P("t1", 2)})).dimension() == 1);
    CHECK(buchberger(Ideal(2, {P("1", 2)})).dimension() == -1);
    CHECK(buchberger(Ideal(2, {P("t1^2 - t2^3", 2)})).dimension() == 1);

    std::mt19937 rng(3);
    std::uniform_int_distribution<int> coef(1, 9);
    for (int k = 1; k <= 3; ++k) {
        BiPoly lin(k);
        for (int i = 1; i <= k; ++i)
            lin += BiPoly::variable(k, i) * Scalar(GaussianRational(rat(coef(rng))));
        CHECK(buchberger(Ideal(k, {lin})).dimension() == k - 1);
    }
}

TEST_CASE("membership worked examples") {
    GroebnerBasis g = buchberger(Ideal(2, {P("t1^2", 2)}));
    CHECK(ideal_membership(P("t1^3", 2), g));
    CHECK_FALSE(ideal_membership(P("t2", 2), g));
    GroebnerBasis h = buchberger(Ideal(2, {P("t1*t2", 2), P("t1^2", 2)}));
    CHECK(ideal_membership(P("t1^2*t2 + t1^4", 2), h));
}

TEST_CASE("membership agrees with degree-bounded linear algebra") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> pick(0, 1);
    int checked = 0;
    for (int trial = 0; trial < 50; ++trial) {
        int k = 1 + trial % 3;
        BiPoly g1 = random_holo(rng, k, 2, 2);
        BiPoly g2 = random_holo(rng, k, 2, 2);
        if (g1.is_zero() || g2.is_zero()) continue;
        std::vector<BiPoly> gens = {g1, g2};
        BiPoly p;
        if (pick(rng)) {
            p = random_holo(rng, k, 2, 2) * g1 + random_holo(rng, k, 2, 2) * g2;
        } else {
            p = random_holo(rng, k, 3, 3);
        }
        if (p.is_zero()) continue;
        GroebnerBasis basis = buchberger(Ideal(k, gens));
        bool via_gb = ideal_membership(p, basis);
        bool via_la = brute_force_membership(p, gens, 8);
        CHECK(via_gb == via_la);
        ++checked;
    }
    CHECK(checked >= 40);
}

TEST_CASE("elimination recovers the cusp image ideal") {
    // eliminate tau from <z1 - tau^2, z2 - tau^3>: variables (tau, z1, z2)
    int k = 3;
    BiPoly e1 = P("t2 - t1^2", k);
    BiPoly e2 = P("t3 - t1^3", k);
    GroebnerBasis g = buchberger(Ideal(k, {e1, e2}, MonomialOrderSpec::eliminate_first(1)));
    auto img = elimination_ideal(g, 1);
    REQUIRE(img.size() >= 1);
    // the image ideal is generated by z1^3 - z2^2
    GroebnerBasis img_basis = buchberger(Ideal(2, img));
    CHECK(img_basis.contains(P("t1^3 - t2^2", 2)));
    GroebnerBasis target = buchberger(Ideal(2, {P("t1^3 - t2^2", 2)}));
    for (const auto& gen : img) CHECK(target.contains(gen));
}

TEST_CASE("budget exhaustion raises a resource error") {
    CHECK_THROWS_AS(buchberger(Ideal(3, {P("t1^2 - t2*t3", 3), P("t2^2 - t1*t3", 3),
                                         P("t3^2 - t1*t2", 3)}),
                               1),
                    resource_error);
}

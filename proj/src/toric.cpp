#include "rforge/toric.hpp"

#include <algorithm>
#include <numeric>

namespace rforge {

namespace {

long det2(const Eigen::Vector2i& u, const Eigen::Vector2i& v) {
    return (long)u[0] * v[1] - (long)u[1] * v[0];
}

Eigen::Vector2i primitive(Eigen::Vector2i v) {
    int g = std::gcd(std::abs(v[0]), std::abs(v[1]));
    if (g > 1) {
        v[0] /= g;
        v[1] /= g;
    }
    return v;
}

// Unimodular subdivision of cone(u, v) (det > 0) by repeatedly inserting the
// unique primitive w with det(u, w) = 1 closest to u.
void hj_resolve(const Eigen::Vector2i& u, const Eigen::Vector2i& v,
                std::vector<Eigen::Vector2i>& rays_out) {
    long d = det2(u, v);
    if (d <= 0) throw std::logic_error("toric: misordered cone generators");
    if (d == 1) return;
    // extended Euclid: a*u1 + b*u2 = g = 1 with (u1,u2) primitive; then
    // w0 = (-b, a) has det(u, w0) = u1*a + u2*b = 1.
    long a = 0, b = 0;
    {
        long r0 = u[0], r1 = u[1], s0 = 1, s1 = 0, t0 = 0, t1 = 1;
        while (r1 != 0) {
            long q = r0 / r1;
            std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
            std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
            std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
        }
        if (r0 < 0) {
            s0 = -s0;
            t0 = -t0;
        }
        a = s0;
        b = t0;  // a*u1 + b*u2 = 1
    }
    Eigen::Vector2i w0((int)-b, (int)a);
    long r = ((det2(w0, v) % d) + d) % d;
    if (r == 0) throw std::logic_error("toric: degenerate insertion ray");
    long t = (r - det2(w0, v)) / d;
    Eigen::Vector2i w = w0 + (int)t * u;
    w = primitive(w);
    rays_out.push_back(w);
    hj_resolve(w, v, rays_out);
}

bool all_factor(const std::vector<BiPoly>& targets, const Eigen::MatrixXi& M,
                std::vector<ChartFactorization>* out) {
    int k = (int)M.rows();
    std::vector<std::vector<int>> rows(k, std::vector<int>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) rows[i][j] = M(i, j);
    std::vector<ChartFactorization> fs;
    for (const auto& f : targets) {
        BiPoly pulled = f.substitute_monomial(rows, k);
        try {
            fs.push_back(factor_monomial_unit(pulled));
        } catch (const factorization_error&) {
            return false;
        }
    }
    if (out) *out = std::move(fs);
    return true;
}

}  // namespace

std::vector<std::vector<int>> ToricChart::rows() const {
    int k = arity();
    std::vector<std::vector<int>> r(k, std::vector<int>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) r[i][j] = M(i, j);
    return r;
}

BiPoly ToricChart::pull(const BiPoly& p) const { return p.substitute_monomial(rows(), arity()); }

NormalizationChart ToricChart::as_chart() const {
    int k = arity();
    NormalizationChart ch;
    ch.arity = k;
    for (int i = 0; i < k; ++i) {
        Multidegree m(k, 0);
        for (int j = 0; j < k; ++j) m[j] = M(i, j);
        ch.components.push_back(BiPoly::monomial(k, m, Multidegree(k, 0), Scalar(1)));
    }
    return ch;
}

bool ToricChart::owns_axis(int j, const std::vector<ToricChart>& siblings) const {
    if (arity() == 1) return true;
    Eigen::Vector2i ray(M(0, j - 1), M(1, j - 1));
    // gather every chart containing this ray as a generator; owner is the one
    // with the lexicographically smallest sorted generator tuple
    auto key_of = [](const ToricChart& c) {
        std::vector<std::pair<int, int>> gens = {{c.M(0, 0), c.M(1, 0)}, {c.M(0, 1), c.M(1, 1)}};
        std::sort(gens.begin(), gens.end());
        return gens;
    };
    auto mine = key_of(*this);
    for (const auto& s : siblings) {
        bool has = false;
        for (int c = 0; c < 2; ++c)
            if (s.M(0, c) == ray[0] && s.M(1, c) == ray[1]) has = true;
        if (!has) continue;
        if (key_of(s) < mine) return false;
    }
    return true;
}

ResolutionAtlas monomialize(const std::vector<BiPoly>& funcs, int blowup_budget) {
    if (funcs.empty()) throw argument_error("nothing to monomialize");
    int k = funcs.front().arity();
    if (k > 2) throw resolution_error("monomialization is desk-scoped to k <= 2");
    for (const auto& f : funcs)
        if (f.arity() != k || !f.is_holomorphic())
            throw argument_error("targets must be holomorphic chart polynomials of equal arity");

    ResolutionAtlas atlas;
    atlas.arity = k;
    atlas.targets = funcs;

    Eigen::MatrixXi I = Eigen::MatrixXi::Identity(k, k);
    std::vector<Eigen::MatrixXi> work{I};
    int steps = 0;
    while (!work.empty()) {
        Eigen::MatrixXi M = work.back();
        work.pop_back();
        std::vector<ChartFactorization> fs;
        if (all_factor(funcs, M, &fs)) {
            atlas.charts.push_back({M, std::move(fs)});
            continue;
        }
        if (k == 1)
            throw std::logic_error("one-variable polynomials always factor after content removal");
        if (++steps > blowup_budget)
            throw resolution_error("blow-up budget exceeded; input out of desk scope");
        Eigen::MatrixXi Ba(2, 2), Bb(2, 2);
        Ba << 1, 0, 1, 1;  // w1 = x1, w2 = x1 x2
        Bb << 1, 1, 0, 1;  // w1 = x1 x2, w2 = x2
        work.push_back(M * Ba);
        work.push_back(M * Bb);
    }
    // deterministic order: sort charts by cone (column) data
    std::sort(atlas.charts.begin(), atlas.charts.end(), [](const ToricChart& a, const ToricChart& b) {
        for (int i = 0; i < a.M.rows(); ++i)
            for (int j = 0; j < a.M.cols(); ++j)
                if (a.M(i, j) != b.M(i, j)) return a.M(i, j) < b.M(i, j);
        return false;
    });
    return atlas;
}

ResolutionAtlas min_structure_atlas(const std::vector<BiPoly>& funcs, int blowup_budget) {
    if (funcs.empty()) throw argument_error("nothing to resolve");
    int k = funcs.front().arity();
    if (k == 1) return monomialize(funcs, blowup_budget);
    if (k != 2) throw resolution_error("min-structure atlas is desk-scoped to k <= 2");

    // monomial parts of each target (content exponents); binomial targets are
    // handled by their own content too, with blow-ups as fallback.
    std::vector<Multidegree> expo;
    for (const auto& f : funcs) expo.push_back(f.holo_content());

    std::vector<Eigen::Vector2i> rays = {{1, 0}, {0, 1}};
    for (std::size_t i = 0; i < expo.size(); ++i)
        for (std::size_t j = i + 1; j < expo.size(); ++j) {
            int d1 = expo[i][0] - expo[j][0], d2 = expo[i][1] - expo[j][1];
            // tie ray of <w, a_i> = <w, a_j> inside the open quadrant
            Eigen::Vector2i w(-d2, d1);
            if (w[0] < 0 || w[1] < 0) w = -w;
            if (w[0] > 0 && w[1] > 0) rays.push_back(primitive(w));
        }
    std::sort(rays.begin(), rays.end(), [](const Eigen::Vector2i& a, const Eigen::Vector2i& b) {
        long c = (long)a[1] * b[0] - (long)a[0] * b[1];  // slope comparison
        if (c != 0) return c < 0;
        return std::make_pair(a[0], a[1]) < std::make_pair(b[0], b[1]);
    });
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());

    std::vector<Eigen::Vector2i> full;
    for (std::size_t i = 0; i + 1 < rays.size(); ++i) {
        full.push_back(rays[i]);
        hj_resolve(rays[i], rays[i + 1], full);
    }
    full.push_back(rays.back());
    std::sort(full.begin(), full.end(), [](const Eigen::Vector2i& a, const Eigen::Vector2i& b) {
        long c = (long)a[1] * b[0] - (long)a[0] * b[1];
        if (c != 0) return c < 0;
        return std::make_pair(a[0], a[1]) < std::make_pair(b[0], b[1]);
    });
    full.erase(std::unique(full.begin(), full.end()), full.end());

    ResolutionAtlas atlas;
    atlas.arity = 2;
    atlas.targets = funcs;
    for (std::size_t i = 0; i + 1 < full.size(); ++i) {
        Eigen::MatrixXi M(2, 2);
        M << full[i][0], full[i + 1][0], full[i][1], full[i + 1][1];
        std::vector<ChartFactorization> fs;
        if (!all_factor(funcs, M, &fs))
            throw resolution_error("target does not monomialize on a fan chart; blow up first");
        atlas.charts.push_back({M, std::move(fs)});
    }
    return atlas;
}

bool atlas_partitions_orthant(const ResolutionAtlas& atlas) {
    if (atlas.arity == 1) return atlas.charts.size() == 1;
    // collect cones, order by slope of the first generator, and check that
    // consecutive cones share a ray, starting at e1 and ending at e2, each
    // with positive determinant (disjoint interiors, full union)
    std::vector<std::pair<Eigen::Vector2i, Eigen::Vector2i>> cones;
    for (const auto& c : atlas.charts)
        cones.push_back({{c.M(0, 0), c.M(1, 0)}, {c.M(0, 1), c.M(1, 1)}});
    for (auto& [u, v] : cones)
        if (det2(u, v) < 0) std::swap(u, v);
    std::sort(cones.begin(), cones.end(), [](const auto& a, const auto& b) {
        return (long)a.first[1] * b.first[0] < (long)a.first[0] * b.first[1];
    });
    if (cones.front().first != Eigen::Vector2i(1, 0)) return false;
    for (std::size_t i = 0; i + 1 < cones.size(); ++i)
        if (cones[i].second != cones[i + 1].first) return false;
    for (const auto& [u, v] : cones)
        if (det2(u, v) <= 0) return false;
    return cones.back().second == Eigen::Vector2i(0, 1);
}

OracleValue toric_lambda_pairing(const ResolutionAtlas& atlas,
                                 const std::vector<LambdaFactor>& factors, const TestForm& phi) {
    OracleValue total;
    for (const auto& chart : atlas.charts) {
        std::vector<LambdaFactor> pulled;
        for (const auto& f : factors) pulled.push_back({chart.pull(f.poly), f.is_residue});

        // pull the test form through the monomial map
        NormalizationChart cmap = chart.as_chart();
        BiPoly coeff = chart.pull(phi.coeff);
        Form pf = Form::scalar(chart.arity(), BiPoly::constant(chart.arity(), Scalar(1)));
        for (int i : phi.holo) pf = wedge(pf, cmap.pullback_dz(i, false));
        for (int j : phi.anti) pf = wedge(pf, cmap.pullback_dz(j, true));

        for (const auto& [key, cf] : pf.components()) {
            TestForm tf(chart.arity(), coeff * cf, key.first, key.second);
            OracleValue v = mellin_pair(pulled, tf, CutoffModel::sharp_polydisc);
            total.value += v.value;
            total.cutoff_dependent = total.cutoff_dependent || v.cutoff_dependent;
        }
    }
    return total;
}

ScalarSum pushforward_from_atlas(const ResolutionAtlas& atlas, const NormalizationChart& ambient,
                                 const std::vector<ResidueExpr>& per_chart,
                                 const AmbientForm& phi) {
    if (per_chart.size() != atlas.charts.size())
        throw argument_error("one expression per atlas chart required");
    ScalarSum acc;
    for (std::size_t c = 0; c < atlas.charts.size(); ++c) {
        const ToricChart& tc = atlas.charts[c];
        ResidueExpr expr = normalize(per_chart[c]);
        if (expr.is_zero()) continue;
        int k = tc.arity();

        // composed map: ambient o substitution
        NormalizationChart composed;
        composed.arity = k;
        for (const auto& comp : ambient.components) composed.components.push_back(tc.pull(comp));

        for (const auto& t : expr.terms) {
            if (!t.point_supported()) {
                // axis-supported pieces must sit on an owned axis
                for (int j = 1; j <= k; ++j) {
                    bool on_axis = t.res[j - 1] > 0;
                    if (on_axis && !tc.owns_axis(j, atlas.charts))
                        throw argument_error(
                            "term supported on a cone face owned by a sibling chart");
                }
            }
        }

        BiPoly pullcoeff = BiPoly::constant(k, Scalar(1));
        for (std::size_t i = 0; i < phi.alpha.size(); ++i) {
            for (int e = 0; e < phi.alpha[i]; ++e) pullcoeff = pullcoeff * composed.components[i];
            for (int e = 0; e < phi.beta[i]; ++e)
                pullcoeff = pullcoeff * composed.components[i].conj();
        }
        Form pf = Form::scalar(k, BiPoly::constant(k, Scalar(1)));
        for (int i : phi.holo) pf = wedge(pf, composed.pullback_dz(i, false));
        for (int j : phi.anti) pf = wedge(pf, composed.pullback_dz(j, true));

        for (const auto& [key, cf] : pf.components())
            acc += evaluate(expr, TestForm(k, pullcoeff * cf, key.first, key.second));
    }
    return acc;
}

}  // namespace rforge

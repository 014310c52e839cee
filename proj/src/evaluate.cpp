#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "rforge/currents.hpp"
#include "rforge/linsolve.hpp"

namespace rforge {

namespace {

Rational factorial(int n) {
    Rational f(1);
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

/// Exact value of one normalized term against one test-form component, or
/// nullopt when the pairing is not exactly evaluable.
std::optional<Scalar> evaluate_term(const ResidueTerm& t, const TestForm& phi, bool* throws) {
    int k = t.arity();
    *throws = false;

    std::vector<Diff> word;
    for (int i = 1; i <= k; ++i)
        if (t.res[i - 1] > 0) word.push_back({i, true});
    for (int i : t.form_holo) word.push_back({i, false});
    for (int j : t.form_anti) word.push_back({j, true});
    for (int i : phi.holo) word.push_back({i, false});
    for (int j : phi.anti) word.push_back({j, true});
    int sign = sort_wedge_word(word);
    if (sign == 0) return Scalar();           // repeated differential
    if ((int)word.size() != 2 * k) return Scalar();  // not top degree
    // sort order is [dt_1..dt_k, ~dt_1..~dt_k]; the orientation normalizing
    // dbar(1/t).(chi dt) = 2*pi*i uses per-variable [~dt_i, dt_i] blocks.
    if ((k * (k + 1) / 2) % 2) sign = -sign;

    BiPoly N = t.coeff * phi.coeff;
    for (int i = 1; i <= k; ++i)
        if (t.res[i - 1] > 0) N = N.drop_anti(i);
    if (N.is_zero()) return Scalar();

    if (!t.point_supported()) {
        // The pairing needs a genuine integral over the free variables; it is
        // exactly zero when some free variable carries a nonzero angular phase
        // in every monomial (and the unit does not twist that variable).
        for (int i = 1; i <= k; ++i) {
            if (t.res[i - 1] > 0) continue;
            if (t.unit_den.degree_in(i, false) > 0) continue;
            bool all_phased = true;
            for (const auto& [mk, mc] : N.terms())
                if (mk.holo[i - 1] - mk.anti[i - 1] - t.pv[i - 1] == 0) {
                    all_phased = false;
                    break;
                }
            if (all_phased) return Scalar();
        }
        *throws = true;
        return std::nullopt;
    }

    // Point-supported: all variables carry residue factors, PV exponents are
    // gone (pv*res = 0), and the value is an iterated derivative at 0.
    RationalFn R{N, t.unit_den};
    Rational fact(1);
    for (int i = 1; i <= k; ++i) {
        int b = t.res[i - 1];
        for (int d = 0; d < b - 1; ++d) R = R.wirtinger_derive(i, false);
        fact *= factorial(b - 1);
    }
    std::vector<GaussianRational> origin(k);
    Scalar v = R.evaluate(origin);
    GaussianRational c = v.coef / GaussianRational(fact);
    if (sign < 0) c = -c;
    Scalar total(c, v.tau_power + k);  // one factor 2*pi*i per residue variable
    total *= t.scalar;
    return total;
}

}  // namespace

ScalarSum evaluate(const ResidueExpr& T, const TestForm& phi) {
    ResidueExpr n = normalize(T);
    if (n.arity != phi.arity && !n.is_zero()) throw argument_error("test form arity mismatch");
    ScalarSum acc;
    for (const auto& t : n.terms) {
        if (!t.grade.empty())
            throw argument_error("graded expression: pair per multivector component");
        bool should_throw = false;
        auto v = evaluate_term(t, phi, &should_throw);
        if (!v)
            throw not_exactly_evaluable(
                "term is not point-supported and its pairing is cutoff-dependent; "
                "use the numeric continuation engine: " +
                t.str());
        acc.add(*v);
    }
    return acc;
}

std::string AmbientForm::str() const {
    std::ostringstream os;
    bool lead = false;
    for (std::size_t i = 0; i < alpha.size(); ++i)
        if (alpha[i]) {
            os << (lead ? "*" : "") << "z" << (i + 1);
            if (alpha[i] > 1) os << "^" << alpha[i];
            lead = true;
        }
    for (std::size_t i = 0; i < beta.size(); ++i)
        if (beta[i]) {
            os << (lead ? "*" : "") << "~z" << (i + 1);
            if (beta[i] > 1) os << "^" << beta[i];
            lead = true;
        }
    if (!lead) os << "1";
    for (int i : holo) os << "^dz" << i;
    for (int j : anti) os << "^~dz" << j;
    return os.str();
}

namespace {

/// Generic rank of the chart map restricted to the residue support plane;
/// sampled at random rational points (stability over three samples).
int restricted_image_rank(const NormalizationChart& chart, const ResidueTerm& t) {
    int k = chart.arity;
    std::vector<int> free_vars;
    for (int i = 1; i <= k; ++i)
        if (t.res[i - 1] == 0) free_vars.push_back(i);
    if (free_vars.empty()) return 0;

    std::vector<BiPoly> restricted;
    for (const auto& comp : chart.components) {
        BiPoly c = comp;
        for (int i = 1; i <= k; ++i)
            if (t.res[i - 1] > 0) c = c.evaluate_var(i, GaussianRational(0));
        restricted.push_back(c);
    }

    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> num(-7, 7), den(1, 3);
    int best = 0;
    for (int sample = 0; sample < 3; ++sample) {
        std::vector<GaussianRational> p(k);
        for (int v : free_vars) {
            int nv = num(rng);
            if (nv == 0) nv = 3;
            p[v - 1] = GaussianRational(rat(nv, den(rng)));
        }
        LinearSystem jac((int)restricted.size(), (int)free_vars.size());
        for (std::size_t r = 0; r < restricted.size(); ++r)
            for (std::size_t c = 0; c < free_vars.size(); ++c) {
                Scalar d = restricted[r].wirtinger_derive(free_vars[c], false).evaluate(p);
                jac.at((int)r, (int)c) = d.coef;
            }
        best = std::max(best, rank(std::move(jac)));
    }
    return best;
}

}  // namespace

ScalarSum pushforward_pair(const CurrentOnSpace& T, const AmbientForm& phi) {
    if (!T.space) throw argument_error("current is not attached to a space");
    const SpacePresentation& space = *T.space;
    if (T.charts.size() != space.charts.size())
        throw argument_error("one chart expression per chart required");
    int n = space.ambient_dim;
    if ((int)phi.alpha.size() != n || (int)phi.beta.size() != n)
        throw argument_error("ambient form dimension mismatch");

    ScalarSum acc;
    for (std::size_t c = 0; c < space.charts.size(); ++c) {
        const NormalizationChart& chart = space.charts[c];
        ResidueExpr expr = normalize(T.charts[c]);
        if (expr.is_zero()) continue;
        int k = chart.arity;

        BiPoly pullcoeff = BiPoly::constant(k, Scalar(1));
        for (int i = 0; i < n; ++i) {
            for (int e = 0; e < phi.alpha[i]; ++e) pullcoeff = pullcoeff * chart.components[i];
            for (int e = 0; e < phi.beta[i]; ++e) pullcoeff = pullcoeff * chart.components[i].conj();
        }
        Form pf = Form::scalar(k, BiPoly::constant(k, Scalar(1)));
        for (int i : phi.holo) pf = wedge(pf, chart.pullback_dz(i, false));
        for (int j : phi.anti) pf = wedge(pf, chart.pullback_dz(j, true));
        if (pf.is_zero()) continue;

        for (const auto& t : expr.terms) {
            if (!t.grade.empty())
                throw argument_error("graded expression: pair per multivector component");
            bool purged = false;
            if (!t.point_supported()) {
                int rho = restricted_image_rank(chart, t);
                if (k - rho > t.anti_degree()) purged = true;  // vanishes downstairs
            }
            if (purged) continue;
            for (const auto& [key, coefF] : pf.components()) {
                TestForm tf(k, pullcoeff * coefF, key.first, key.second);
                bool should_throw = false;
                auto v = evaluate_term(t, tf, &should_throw);
                if (!v)
                    throw not_exactly_evaluable("push-forward pairing not exactly evaluable: " +
                                                t.str());
                acc.add(*v);
            }
        }
    }
    return acc;
}

std::vector<AmbientForm> ambient_forms_up_to(int n, int degree_bound) {
    std::vector<Multidegree> monos;
    Multidegree scratch(2 * n, 0);
    std::function<void(int, int)> gen = [&](int pos, int left) {
        if (pos == 2 * n) {
            monos.push_back(scratch);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            scratch[pos] = e;
            gen(pos + 1, left - e);
        }
        scratch[pos] = 0;
    };
    gen(0, degree_bound);

    std::vector<IndexSet> subsets;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        IndexSet s;
        for (int i = 1; i <= n; ++i)
            if (mask & (1u << (i - 1))) s.push_back(i);
        subsets.push_back(s);
    }

    std::vector<AmbientForm> out;
    for (const auto& m : monos) {
        AmbientForm f;
        f.alpha.assign(m.begin(), m.begin() + n);
        f.beta.assign(m.begin() + n, m.end());
        for (const auto& I : subsets)
            for (const auto& J : subsets) {
                f.holo = I;
                f.anti = J;
                out.push_back(f);
            }
    }
    return out;
}

CompareReport compare_on_Z(const CurrentOnSpace& mu, const CurrentOnSpace& nu, int degree_bound) {
    // Distinct presentations of the same space are allowed: pairings compare
    // through each presentation's own charts.
    if (mu.space->ambient_dim != nu.space->ambient_dim)
        throw argument_error("currents live in different ambient spaces");
    CompareReport rep;
    rep.bound = degree_bound;
    for (const auto& phi : ambient_forms_up_to(mu.space->ambient_dim, degree_bound)) {
        ScalarSum a, b;
        try {
            a = pushforward_pair(mu, phi);
            b = pushforward_pair(nu, phi);
        } catch (const not_exactly_evaluable&) {
            ++rep.skipped_forms;
            continue;
        }
        if (a != b) {
            rep.equal = false;
            rep.witness = phi;
            rep.lhs = a;
            rep.rhs = b;
            return rep;
        }
    }
    return rep;
}

CurrentOnSpace weak_mul(const WeakFunction& g, const CurrentOnSpace& T) {
    if (!T.canonical_upstairs)
        throw argument_error(
            "multiplication by weakly holomorphic functions is defined only on the "
            "canonical upstairs representative");
    if (g.space != T.space) throw argument_error("function lives on a different space");
    CurrentOnSpace out;
    out.space = T.space;
    out.canonical_upstairs = true;
    for (std::size_t c = 0; c < T.charts.size(); ++c) {
        const ChartFn& fn = g.on_chart((int)c);
        ResidueExpr e = T.charts[c];
        for (auto& t : e.terms) {
            t.coeff = t.coeff * fn.num;
            if (!fn.den.is_constant()) {
                if (fn.den.constant_term().is_zero())
                    throw factorization_error("pullback denominator vanishes on the support");
                t.unit_den = t.unit_den * fn.den;
            }
        }
        out.charts.push_back(normalize(e));
    }
    return out;
}

CurrentOnSpace weak_mul_intrinsic(const WeakFunction& phi, const CurrentOnSpace& mu,
                                  const std::vector<Multidegree>& h_monomials_per_chart) {
    if (mu.space != phi.space) throw argument_error("function lives on a different space");
    if (h_monomials_per_chart.size() != mu.charts.size())
        throw argument_error("one restriction monomial per chart required");
    CurrentOnSpace out;
    out.space = mu.space;
    out.canonical_upstairs = mu.canonical_upstairs;
    for (std::size_t c = 0; c < mu.charts.size(); ++c) {
        ResidueExpr restricted = restrict_complement(mu.charts[c], h_monomials_per_chart[c]);
        ResidueExpr orig = normalize(mu.charts[c]);
        if (!(restricted == orig)) {
            // name the offending term for the error report
            for (const auto& t : orig.terms) {
                bool hit = false;
                for (std::size_t i = 0; i < h_monomials_per_chart[c].size(); ++i)
                    if (h_monomials_per_chart[c][i] > 0 && t.res[i] > 0) hit = true;
                if (hit)
                    throw argument_error(
                        "restriction hypothesis 1_{P_phi} mu = 0 fails on term: " + t.str());
            }
        }
        const ChartFn& fn = phi.on_chart((int)c);
        ResidueExpr e = restricted;
        for (auto& t : e.terms) {
            t.coeff = t.coeff * fn.num;
            if (!fn.den.is_constant()) {
                if (fn.den.constant_term().is_zero())
                    throw factorization_error("pullback denominator vanishes on the support");
                t.unit_den = t.unit_den * fn.den;
            }
        }
        out.charts.push_back(normalize(e));
    }
    return out;
}

}  // namespace rforge

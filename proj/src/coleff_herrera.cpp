#include "rforge/coleff_herrera.hpp"

#include <sstream>

namespace rforge {

namespace {

ChartFactorization factor_chartfn(const ChartFn& fn) {
    if (!fn.is_polynomial())
        throw factorization_error("chart pullback is not polynomial; cannot factor");
    return factor_monomial_unit(fn.num);
}

bool in_plane_ideal_of_support(const BiPoly& p, const ResidueTerm& t) {
    for (const auto& [k, c] : p.terms()) {
        bool hit = false;
        for (int v = 1; v <= t.arity(); ++v)
            if (t.res[v - 1] > 0 && k.holo[v - 1] > 0) {
                hit = true;
                break;
            }
        if (!hit) return false;
    }
    return true;
}

}  // namespace

CurrentOnSpace ch_product(const CHSpec& spec) {
    if (spec.tuple.empty()) throw argument_error("empty Coleff-Herrera tuple");
    if (spec.residue_count < 0 || spec.residue_count > (int)spec.tuple.size())
        throw argument_error("residue split out of range");
    std::vector<bool> kinds(spec.tuple.size(), false);
    for (int i = 0; i < spec.residue_count; ++i) kinds[i] = true;
    return ch_product_ordered(spec.tuple, kinds);
}

CurrentOnSpace ch_product_ordered(const std::vector<WeakFunction>& ordered,
                                  const std::vector<bool>& is_residue) {
    if (ordered.empty() || ordered.size() != is_residue.size())
        throw argument_error("malformed factor sequence");
    const SpacePresentation* space = ordered.front().space;
    for (const auto& f : ordered)
        if (f.space != space) throw argument_error("factors live on different spaces");

    CurrentOnSpace out;
    out.space = space;
    out.canonical_upstairs = true;
    for (std::size_t c = 0; c < space->charts.size(); ++c) {
        ResidueExpr e = ResidueExpr::unit(space->charts[c].arity);
        for (std::size_t i = 0; i < ordered.size(); ++i) {
            ChartFactorization f = factor_chartfn(ordered[i].on_chart((int)c));
            e = is_residue[i] ? dbar_wedge(f, e) : pv_mul(f, e);
        }
        out.charts.push_back(std::move(e));
    }
    return out;
}

Report check_leibniz(const CHSpec& spec) {
    int m = (int)spec.tuple.size(), p = spec.residue_count;
    CurrentOnSpace T = ch_product(spec);
    const SpacePresentation* space = spec.space();

    for (std::size_t c = 0; c < T.charts.size(); ++c) {
        ResidueExpr lhs = dbar_expr(T.charts[c]);

        ResidueExpr rhs = ResidueExpr::zero(space->charts[c].arity);
        for (int j = p + 1; j <= m; ++j) {
            ResidueExpr e = ResidueExpr::unit(space->charts[c].arity);
            for (int i = 1; i <= m; ++i) {
                ChartFactorization f = factor_chartfn(spec.tuple[i - 1].on_chart((int)c));
                bool res = (i <= p) || (i == j);
                e = res ? dbar_wedge(f, e) : pv_mul(f, e);
            }
            if ((m - j) % 2) e = -e;
            rhs += e;
        }
        if (!(lhs == rhs)) {
            Report r;
            r.status = Report::Status::failed;
            std::ostringstream os;
            os << "Leibniz mismatch on chart " << c << ": dbar T = " << normalize(lhs).str()
               << " vs " << normalize(rhs).str();
            r.reason = os.str();
            return r;
        }

        // support certificate: every residue-support plane sits inside the
        // zero set of the residue tuple
        for (const auto& t : normalize(T.charts[c]).terms)
            for (int i = 1; i <= p; ++i) {
                const ChartFn& fn = spec.tuple[i - 1].on_chart((int)c);
                if (!in_plane_ideal_of_support(fn.num, t)) {
                    Report r;
                    r.status = Report::Status::failed;
                    r.reason = "support certificate fails: factor " + std::to_string(i) +
                               " does not vanish on the support of " + t.str();
                    return r;
                }
            }
    }
    return {};
}

namespace {

Report ci_gate(const CHSpec& spec) {
    int p = spec.residue_count, m = (int)spec.tuple.size();
    std::vector<WeakFunction> head(spec.tuple.begin(), spec.tuple.begin() + p);
    if (p > 0) {
        if (complete_intersection_verdict(head) != CIVerdict::complete_intersection) {
            Report r;
            r.status = Report::Status::skipped;
            r.reason = "complete intersection hypothesis fails for the residue tuple";
            return r;
        }
    }
    for (int i = p + 1; i <= m; ++i) {
        std::vector<WeakFunction> ext = head;
        ext.push_back(spec.tuple[i - 1]);
        if (complete_intersection_verdict(ext) != CIVerdict::complete_intersection) {
            Report r;
            r.status = Report::Status::skipped;
            r.reason = "complete intersection hypothesis fails with PV factor " + std::to_string(i);
            return r;
        }
    }
    return {};
}

int residue_permutation_sign(const std::vector<int>& perm, int p) {
    // sign of the permutation restricted to residue factors (original index <= p)
    std::vector<int> restricted;
    for (int v : perm)
        if (v <= p) restricted.push_back(v);
    int sign = 1;
    for (std::size_t i = 0; i < restricted.size(); ++i)
        for (std::size_t j = i + 1; j < restricted.size(); ++j)
            if (restricted[i] > restricted[j]) sign = -sign;
    return sign;
}

}  // namespace

Report check_commutation(const CHSpec& spec, const std::vector<int>& perm, int bound) {
    int m = (int)spec.tuple.size(), p = spec.residue_count;
    if ((int)perm.size() != m) throw argument_error("permutation length mismatch");
    Report gate = ci_gate(spec);
    if (gate.status == Report::Status::skipped) return gate;

    CurrentOnSpace T = ch_product(spec);

    std::vector<WeakFunction> ordered;
    std::vector<bool> kinds;
    for (int v : perm) {
        if (v < 1 || v > m) throw argument_error("bad permutation entry");
        ordered.push_back(spec.tuple[v - 1]);
        kinds.push_back(v <= p);
    }
    CurrentOnSpace S = ch_product_ordered(ordered, kinds);
    int sign = residue_permutation_sign(perm, p);
    if (sign < 0)
        for (auto& e : S.charts) e = -e;

    CompareReport cr = compare_on_Z(T, S, bound);
    if (cr.equal) return {};
    Report r;
    r.status = Report::Status::failed;
    r.reason = "ordering comparison differs at " + cr.witness->str() + ": " + cr.lhs.str() +
               " vs " + cr.rhs.str();
    return r;
}

Report check_annihilation(const CHSpec& spec, int index, int bound) {
    int m = (int)spec.tuple.size(), p = spec.residue_count;
    if (index < 1 || index > m) throw argument_error("factor index out of range");
    Report gate = ci_gate(spec);
    if (gate.status == Report::Status::skipped) return gate;

    CurrentOnSpace T = ch_product(spec);
    CurrentOnSpace fT = weak_mul(spec.tuple[index - 1], T);

    if (index <= p) {
        for (std::size_t c = 0; c < fT.charts.size(); ++c)
            if (!normalize(fT.charts[c]).is_zero()) {
                Report r;
                r.status = Report::Status::failed;
                r.reason = "f_j T does not rewrite to zero on chart " + std::to_string(c) + ": " +
                           normalize(fT.charts[c]).str();
                return r;
            }
        CurrentOnSpace zero{spec.space(), {}, true};
        for (const auto& ch : spec.space()->charts) zero.charts.push_back(ResidueExpr::zero(ch.arity));
        CompareReport cr = compare_on_Z(fT, zero, bound);
        if (!cr.equal) {
            Report r;
            r.status = Report::Status::failed;
            r.reason = "pairings of f_j T are nonzero at " + cr.witness->str();
            return r;
        }
        return {};
    }

    // PV absorption: f_k T equals the product with the k-th PV factor removed.
    std::vector<WeakFunction> reduced;
    std::vector<bool> kinds;
    for (int i = 1; i <= m; ++i) {
        if (i == index) continue;
        reduced.push_back(spec.tuple[i - 1]);
        kinds.push_back(i <= p);
    }
    CurrentOnSpace R = ch_product_ordered(reduced, kinds);
    for (std::size_t c = 0; c < fT.charts.size(); ++c)
        if (!(fT.charts[c] == R.charts[c])) {
            Report r;
            r.status = Report::Status::failed;
            r.reason = "PV absorption differs on chart " + std::to_string(c);
            return r;
        }
    CompareReport cr = compare_on_Z(fT, R, bound);
    if (!cr.equal) {
        Report r;
        r.status = Report::Status::failed;
        r.reason = "PV absorption pairings differ at " + cr.witness->str();
        return r;
    }
    return {};
}

SpacePresentation transported_presentation(const SpacePresentation& space,
                                           const ChartAutomorphism& phi) {
    if (space.charts.size() != 1)
        throw argument_error("chart automorphisms transport single-chart presentations");
    const NormalizationChart& ch = space.charts[0];
    int k = ch.arity;
    if ((int)phi.forward.size() != k || (int)phi.inverse.size() != k)
        throw argument_error("automorphism arity mismatch");
    // exact two-sided inverse check
    for (int i = 0; i < k; ++i) {
        BiPoly fi = phi.forward[i].substitute(phi.inverse);
        BiPoly gi = phi.inverse[i].substitute(phi.forward);
        if (fi != BiPoly::variable(k, i + 1) || gi != BiPoly::variable(k, i + 1))
            throw argument_error("automorphism inverse is not exact");
    }
    NormalizationChart nch;
    nch.arity = k;
    for (const auto& comp : ch.components) nch.components.push_back(comp.substitute(phi.inverse));
    return SpacePresentation(space.ambient_dim, {nch});
}

WeakFunction transport(const WeakFunction& w, const SpacePresentation& target,
                       const ChartAutomorphism& phi) {
    ChartFn fn = w.on_chart(0);
    ChartFn out{fn.num.substitute(phi.inverse), fn.den.substitute(phi.inverse)};
    return make_weak_function(target, {out}, w.ambient_witness, w.name);
}

Report transformation_check(const CHSpec& f_spec, const CHSpec& g_spec,
                            const std::vector<std::vector<WeakFunction>>& A_on_g_space,
                            const std::vector<WeakFunction>& f_on_g_space, int bound) {
    int pf = (int)f_spec.tuple.size();
    if ((int)g_spec.tuple.size() != pf || f_spec.residue_count != pf ||
        g_spec.residue_count != pf)
        throw argument_error("transformation law needs full residue tuples of equal length");
    if ((int)A_on_g_space.size() != pf || (int)f_on_g_space.size() != pf)
        throw argument_error("matrix dimension mismatch");

    const SpacePresentation* gs = g_spec.space();

    // exact identity g = A f on every chart of the g-presentation
    for (std::size_t c = 0; c < gs->charts.size(); ++c) {
        int k = gs->charts[c].arity;
        for (int i = 0; i < pf; ++i) {
            BiPoly sum(k);
            for (int j = 0; j < pf; ++j)
                sum += A_on_g_space[i][j].on_chart((int)c).num * f_on_g_space[j].on_chart((int)c).num;
            if (sum != g_spec.tuple[i].on_chart((int)c).num)
                throw argument_error("g != A f exactly on chart " + std::to_string(c));
        }
    }

    if (complete_intersection_verdict(f_spec.tuple) != CIVerdict::complete_intersection ||
        complete_intersection_verdict(g_spec.tuple) != CIVerdict::complete_intersection) {
        Report r;
        r.status = Report::Status::skipped;
        r.reason = "complete intersection hypothesis fails";
        return r;
    }

    CurrentOnSpace mu_f = ch_product(f_spec);
    CurrentOnSpace mu_g = ch_product(g_spec);

    // det A as a weak function on the g-presentation
    std::vector<ChartFn> det_pullbacks;
    for (std::size_t c = 0; c < gs->charts.size(); ++c) {
        int k = gs->charts[c].arity;
        BiPoly det(k);
        if (pf == 1) {
            det = A_on_g_space[0][0].on_chart((int)c).num;
        } else if (pf == 2) {
            det = A_on_g_space[0][0].on_chart((int)c).num * A_on_g_space[1][1].on_chart((int)c).num -
                  A_on_g_space[0][1].on_chart((int)c).num * A_on_g_space[1][0].on_chart((int)c).num;
        } else {
            throw argument_error("transformation law implemented for tuples of length <= 2");
        }
        det_pullbacks.push_back(ChartFn::poly(det));
    }
    WeakFunction detA = make_weak_function(*gs, det_pullbacks, std::nullopt, "detA");
    CurrentOnSpace rhs = weak_mul(detA, mu_g);

    CompareReport cr = compare_on_Z(mu_f, rhs, bound);
    if (cr.equal) return {};
    Report r;
    r.status = Report::Status::failed;
    r.reason = "transformation law differs at " + cr.witness->str() + ": " + cr.lhs.str() + " vs " +
               cr.rhs.str();
    return r;
}

}  // namespace rforge

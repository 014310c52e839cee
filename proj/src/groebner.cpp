#include "rforge/groebner.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace rforge {

namespace {

int block_degree(const Multidegree& m, int lo, int hi) {
    int d = 0;
    for (int i = lo; i < hi; ++i) d += m[i];
    return d;
}

// grevlex on the index window [lo, hi): higher total degree wins; ties broken
// so that the monomial whose trailing exponent difference is negative wins.
int grevlex_cmp(const Multidegree& a, const Multidegree& b, int lo, int hi) {
    int da = block_degree(a, lo, hi), db = block_degree(b, lo, hi);
    if (da != db) return da < db ? -1 : 1;
    for (int i = hi - 1; i >= lo; --i) {
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    }
    return 0;
}

bool divides(const Multidegree& a, const Multidegree& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Multidegree lcm_md(const Multidegree& a, const Multidegree& b) {
    Multidegree m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) m[i] = std::max(a[i], b[i]);
    return m;
}

Multidegree sub_md(const Multidegree& a, const Multidegree& b) {
    Multidegree m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] - b[i];
    return m;
}

bool coprime(const Multidegree& a, const Multidegree& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return false;
    return true;
}

GaussianRational coeff_of(const BiPoly& p, const Multidegree& m) {
    auto it = p.terms().find({m, Multidegree(m.size(), 0)});
    if (it == p.terms().end()) return GaussianRational(0);
    if (it->second.tau_power != 0) throw argument_error("tau coefficient in ideal generator");
    return it->second.coef;
}

BiPoly mono_times(const BiPoly& p, const Multidegree& m, const GaussianRational& c) {
    BiPoly out(p.arity());
    for (const auto& [k, v] : p.terms()) {
        Multidegree h = k.holo;
        for (std::size_t i = 0; i < h.size(); ++i) h[i] += m[i];
        out.add_term({h, k.anti}, Scalar(v.coef * c, v.tau_power));
    }
    return out;
}

}  // namespace

bool MonomialOrderSpec::less(const Multidegree& a, const Multidegree& b) const {
    int k = (int)a.size();
    if (kind == Kind::grevlex) return grevlex_cmp(a, b, 0, k) < 0;
    int c = grevlex_cmp(a, b, 0, block);
    if (c != 0) return c < 0;
    return grevlex_cmp(a, b, block, k) < 0;
}

Ideal::Ideal(int k, std::vector<BiPoly> gens, MonomialOrderSpec ord)
    : arity(k), order(ord) {
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        if (!g.is_holomorphic()) throw argument_error("ideal generators must be holomorphic");
        generators.push_back(std::move(g));
    }
}

Multidegree GroebnerBasis::leading_monomial(const BiPoly& p) const {
    if (p.is_zero()) throw argument_error("leading monomial of zero polynomial");
    const Multidegree* best = nullptr;
    for (const auto& [k, c] : p.terms())
        if (!best || order_.less(*best, k.holo)) best = &k.holo;
    return *best;
}

BiPoly GroebnerBasis::normal_form(const BiPoly& p) const {
    if (!p.is_holomorphic()) throw argument_error("normal form of non-holomorphic polynomial");
    BiPoly rem(arity_);
    BiPoly work = p;
    while (!work.is_zero()) {
        Multidegree lm = leading_monomial(work);
        GaussianRational lc = coeff_of(work, lm);
        bool reduced = false;
        for (const BiPoly& g : gens_) {
            Multidegree glm = leading_monomial(g);
            if (!divides(glm, lm)) continue;
            GaussianRational glc = coeff_of(g, glm);
            work -= mono_times(g, sub_md(lm, glm), lc / glc);
            reduced = true;
            break;
        }
        if (!reduced) {
            rem.add_term({lm, Multidegree(arity_, 0)}, Scalar(lc));
            work.add_term({lm, Multidegree(arity_, 0)}, Scalar(-lc));
        }
    }
    return rem;
}

bool GroebnerBasis::is_unit_ideal() const {
    for (const BiPoly& g : gens_)
        if (g.is_constant() && !g.is_zero()) return true;
    return false;
}

int GroebnerBasis::dimension() const {
    if (is_unit_ideal()) return -1;
    std::vector<Multidegree> lms;
    for (const BiPoly& g : gens_) lms.push_back(leading_monomial(g));
    int best = 0;
    // A variable subset S is independent iff no leading monomial is supported
    // entirely inside S; the Krull dimension is the largest such |S|.
    for (unsigned mask = 0; mask < (1u << arity_); ++mask) {
        bool independent = true;
        for (const Multidegree& m : lms) {
            bool inside = true;
            for (int i = 0; i < arity_; ++i)
                if (m[i] > 0 && !(mask & (1u << i))) {
                    inside = false;
                    break;
                }
            if (inside) {
                independent = false;
                break;
            }
        }
        if (independent) best = std::max(best, __builtin_popcount(mask));
    }
    return best;
}

GroebnerBasis buchberger(const Ideal& ideal, long pair_budget) {
    GroebnerBasis basis;
    basis.arity_ = ideal.arity;
    basis.order_ = ideal.order;
    basis.gens_ = ideal.generators;
    auto& G = basis.gens_;
    if (G.empty()) return basis;

    std::deque<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i < G.size(); ++i)
        for (std::size_t j = i + 1; j < G.size(); ++j) pairs.emplace_back(i, j);

    long processed = 0;
    while (!pairs.empty()) {
        if (++processed > pair_budget) {
            basis.usable_ = false;
            throw resource_error("Buchberger S-pair budget exceeded");
        }
        auto [i, j] = pairs.front();
        pairs.pop_front();
        Multidegree li = basis.leading_monomial(G[i]);
        Multidegree lj = basis.leading_monomial(G[j]);
        if (coprime(li, lj)) continue;  // first Buchberger criterion
        Multidegree l = lcm_md(li, lj);
        GaussianRational ci = coeff_of(G[i], li), cj = coeff_of(G[j], lj);
        BiPoly s = mono_times(G[i], sub_md(l, li), GaussianRational(1) / ci) -
                   mono_times(G[j], sub_md(l, lj), GaussianRational(1) / cj);
        BiPoly r = basis.normal_form(s);
        if (r.is_zero()) continue;
        for (std::size_t t = 0; t < G.size(); ++t) pairs.emplace_back(t, G.size());
        G.push_back(r);
    }

    // Reduce: drop elements whose leading monomial is divisible by another's,
    // then fully reduce each against the rest and normalize leading coeff to 1.
    std::vector<BiPoly> minimal;
    for (std::size_t i = 0; i < G.size(); ++i) {
        Multidegree li = basis.leading_monomial(G[i]);
        bool keep = true;
        for (std::size_t j = 0; j < G.size(); ++j) {
            if (i == j) continue;
            Multidegree lj = basis.leading_monomial(G[j]);
            if (divides(lj, li) && (lj != li || j < i)) {
                keep = false;
                break;
            }
        }
        if (keep) minimal.push_back(G[i]);
    }
    GroebnerBasis reduced = basis;
    reduced.gens_ = minimal;
    std::vector<BiPoly> out;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        GroebnerBasis others = basis;
        others.gens_.clear();
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.gens_.push_back(minimal[j]);
        BiPoly r = others.gens_.empty() ? minimal[i] : others.normal_form(minimal[i]);
        if (r.is_zero()) continue;
        Multidegree lm = basis.leading_monomial(r);
        GaussianRational lc = coeff_of(r, lm);
        r *= Scalar(GaussianRational(1) / lc);
        out.push_back(r);
    }
    std::sort(out.begin(), out.end(), [&](const BiPoly& a, const BiPoly& b) {
        return basis.order_.less(basis.leading_monomial(a), basis.leading_monomial(b));
    });
    basis.gens_ = std::move(out);
    return basis;
}

bool ideal_membership(const BiPoly& p, const GroebnerBasis& basis) {
    return basis.contains(p);
}

std::vector<BiPoly> elimination_ideal(const GroebnerBasis& basis, int block) {
    if (basis.order().kind != MonomialOrderSpec::Kind::lex_block || basis.order().block != block)
        throw argument_error("basis was not computed with the requested elimination order");
    int k = basis.arity();
    std::vector<BiPoly> out;
    for (const BiPoly& g : basis.elements()) {
        bool free_of_block = true;
        for (const auto& [key, c] : g.terms())
            for (int i = 0; i < block; ++i)
                if (key.holo[i] > 0) {
                    free_of_block = false;
                    break;
                }
        if (!free_of_block) continue;
        BiPoly h(k - block);
        for (const auto& [key, c] : g.terms()) {
            Multidegree m(key.holo.begin() + block, key.holo.end());
            h.add_term({m, Multidegree(k - block, 0)}, c);
        }
        out.push_back(h);
    }
    return out;
}

}  // namespace rforge

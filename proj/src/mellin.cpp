#include "rforge/mellin.hpp"

#include <algorithm>

#include "rforge/series.hpp"

namespace rforge {

namespace {

// Monomial atom of the expanded integrand: coefficient, lambda-monomial
// exponents (one per factor), integer exponents of t_v and ~t_v (negative
// powers allowed), and the conjugate-differential slots in product order.
struct Atom {
    GaussianRational coef;
    std::vector<int> lam;     // lambda_j exponents
    std::vector<int> holo;    // gamma_v
    std::vector<int> anti;    // delta_v
    std::vector<int> dbar_slots;  // variable index per residue factor, factor order
};

// Polynomial in one lambda with rational coefficients (for binomial series).
using LamPoly = std::vector<Rational>;

LamPoly lam_binomial(int n) {
    // C(lambda, n) = lambda (lambda-1) ... (lambda-n+1) / n!
    LamPoly p{Rational(1)};
    for (int i = 0; i < n; ++i) {
        LamPoly q(p.size() + 1, Rational(0));
        for (std::size_t d = 0; d < p.size(); ++d) {
            q[d + 1] += p[d];
            q[d] -= p[d] * i;
        }
        p = std::move(q);
    }
    Rational fact(1);
    for (int i = 2; i <= n; ++i) fact *= i;
    for (auto& c : p) c /= fact;
    return p;
}

// A truncated series with lambda-polynomial coefficients, stored as plain
// monomial lists: (lam power, holo exponents, anti exponents, coefficient).
struct SeriesTerm {
    int lam = 0;
    Multidegree holo, anti;
    GaussianRational coef;
};

std::vector<SeriesTerm> series_of_bipoly(const BiPoly& p) {
    std::vector<SeriesTerm> out;
    for (const auto& [k, c] : p.terms()) {
        if (c.tau_power != 0) throw argument_error("tau inside a continuation integrand");
        out.push_back({0, k.holo, k.anti, c.coef});
    }
    return out;
}

// |u|^{2 lambda} = (1 + (u ~u - 1))^lambda expanded to total order N.
std::vector<SeriesTerm> unit_modulus_series(const BiPoly& u, int N) {
    int k = u.arity();
    BiPoly x = u * u.conj() - BiPoly::constant(k, Scalar(1));
    std::vector<SeriesTerm> out;
    out.push_back({0, Multidegree(k, 0), Multidegree(k, 0), GaussianRational(1)});
    BiPoly xn = BiPoly::constant(k, Scalar(1));
    for (int n = 1; n <= N; ++n) {
        xn = truncate_total(xn * x, N);
        if (xn.is_zero()) break;
        LamPoly bin = lam_binomial(n);
        for (const auto& [key, c] : xn.terms())
            for (std::size_t d = 1; d < bin.size(); ++d)  // C(lambda,n) has no constant term
                if (bin[d] != 0)
                    out.push_back({(int)d, key.holo, key.anti, c.coef * GaussianRational(bin[d])});
    }
    return out;
}

std::vector<SeriesTerm> inverse_series(const BiPoly& u, int N, bool conjugate) {
    BiPoly base = conjugate ? u.conj() : u;
    return series_of_bipoly(series_inverse(base, N));
}

void multiply_in(std::vector<Atom>& atoms, const std::vector<SeriesTerm>& series, int factor_index,
                 int max_total) {
    std::vector<Atom> out;
    out.reserve(atoms.size() * series.size());
    for (const auto& a : atoms)
        for (const auto& s : series) {
            Atom b = a;
            b.coef *= s.coef;
            if (b.coef.is_zero()) continue;
            b.lam[factor_index] += s.lam;
            int total = 0;
            for (std::size_t v = 0; v < b.holo.size(); ++v) {
                b.holo[v] += s.holo[v];
                b.anti[v] += s.anti[v];
                total += std::max(0, b.holo[v]) + std::max(0, b.anti[v]);
            }
            if (total > max_total) continue;  // beyond any pole-reachable order
            out.push_back(std::move(b));
        }
    atoms = std::move(out);
}

// closed-form int_0^R chi r^{E-1} dr for the quintic bump (chi == 1 on
// [0,R/2], smoothstep down to 0 at R); exact in the rational radius.
Rational bump_radial_integral(int E, const Rational& R) {
    if (E <= 0) throw argument_error("divergent principal-value radial integral");
    Rational rho = R / 2;
    auto powq = [](Rational base, int e) {
        Rational r(1);
        for (int i = 0; i < e; ++i) r *= base;
        return r;
    };
    Rational acc = powq(rho, E) / E;
    // chi(r) = 1 - S(x), x = (r - R/2)/(R/2), S = 6x^5 - 15x^4 + 10x^3.
    // Expand (1 - S) r^{E-1} as a polynomial in r and integrate on [R/2, R].
    // Work in the variable x: r = (R/2)(1 + x), dr = (R/2) dx, x in [0,1].
    // chi r^{E-1} dr = (R/2)^E (1 - S(x)) (1+x)^{E-1} dx.
    std::vector<Rational> S(6, Rational(0));
    S[3] = 10;
    S[4] = -15;
    S[5] = 6;
    std::vector<Rational> one_minus_S(6, Rational(0));
    one_minus_S[0] = 1;
    for (int i = 3; i <= 5; ++i) one_minus_S[i] = -S[i];
    // (1+x)^{E-1}
    std::vector<Rational> binom(E, Rational(0));
    binom[0] = 1;
    for (int row = 1; row <= E - 1; ++row)
        for (int j = row; j >= 1; --j) binom[j] += binom[j - 1];
    std::vector<Rational> prod(one_minus_S.size() + binom.size() - 1, Rational(0));
    for (std::size_t i = 0; i < one_minus_S.size(); ++i)
        for (std::size_t j = 0; j < binom.size(); ++j) prod[i + j] += one_minus_S[i] * binom[j];
    Rational tail(0);
    for (std::size_t d = 0; d < prod.size(); ++d) tail += prod[d] / Rational((long)(d + 1));
    acc += powq(rho, E) * tail;
    return acc;
}

}  // namespace

OracleValue mellin_pair(const std::vector<LambdaFactor>& factors, const TestForm& phi,
                        CutoffModel cutoff, const Rational& cutoff_radius, int series_order) {
    if (factors.empty()) throw argument_error("continuation product needs at least one factor");
    int k = phi.arity;
    int m = (int)factors.size();

    struct FactorData {
        Multidegree mono;
        BiPoly unit;  // holomorphic, unit(0) != 0
        bool is_residue;
    };
    // Poles sit at per-variable exponent -1; series terms only raise
    // exponents, so orders beyond the total pole depth plus the test degree
    // cannot reach a pole and die against their lambda prefactors.
    std::vector<FactorData> fd;
    int bound_guess = phi.coeff.total_degree() + 2 * k + 4;
    for (const auto& f : factors) {
        if (f.poly.arity() != k) throw argument_error("factor arity mismatch");
        ChartFactorization cf = factor_monomial_unit(f.poly);
        fd.push_back({cf.expo, cf.unit.num(), f.is_residue});
        bound_guess += degree_sum(cf.expo);
    }
    int N = series_order > 0 ? series_order : bound_guess;

    // lambda weights: coefficient of lambda_j in the radial exponent of r_v.
    std::vector<std::vector<int>> weight(m, std::vector<int>(k, 0));
    for (int j = 0; j < m; ++j)
        for (int v = 0; v < k; ++v) weight[j][v] = 2 * fd[j].mono[v];

    // Assemble the atoms of the integrand, factor by factor.
    std::vector<Atom> atoms;
    {
        Atom seed;
        seed.coef = GaussianRational(1);
        seed.lam.assign(m, 0);
        seed.holo.assign(k, 0);
        seed.anti.assign(k, 0);
        atoms.push_back(seed);
    }

    for (int j = 0; j < m; ++j) {
        // 1/f_j = t^{-mono} u^{-1}
        for (auto& a : atoms)
            for (int v = 0; v < k; ++v) a.holo[v] -= fd[j].mono[v];
        if (!fd[j].unit.is_constant())
            multiply_in(atoms, inverse_series(fd[j].unit, N, false), j, N + 8 * k);
        else {
            GaussianRational c0 = fd[j].unit.constant_term().coef;
            for (auto& a : atoms) a.coef /= c0;
        }
        // |f_j|^{2 lambda_j} modulus content of the unit part
        if (!fd[j].unit.is_constant())
            multiply_in(atoms, unit_modulus_series(fd[j].unit, N), j, N + 8 * k);

        if (fd[j].is_residue) {
            // dbar|f_j|^{2 lambda_j} = lambda_j |f_j|^{2 lambda_j}
            //   ( sum_v mono_v ~dt_v/~t_v + dbar(~u_j)/~u_j ).
            std::vector<Atom> forked;
            for (const auto& a : atoms) {
                for (int v = 0; v < k; ++v) {
                    if (fd[j].mono[v] == 0) continue;
                    Atom b = a;
                    b.coef *= GaussianRational(rat(fd[j].mono[v]));
                    b.lam[j] += 1;
                    b.anti[v] -= 1;
                    b.dbar_slots.push_back(v + 1);
                    forked.push_back(std::move(b));
                }
            }
            if (!fd[j].unit.is_constant()) {
                auto inv_conj = inverse_series(fd[j].unit, N, true);
                for (int v = 0; v < k; ++v) {
                    BiPoly du = fd[j].unit.wirtinger_derive(v + 1, false).conj();
                    if (du.is_zero()) continue;
                    std::vector<Atom> branch = atoms;
                    for (auto& a : branch) {
                        a.lam[j] += 1;
                        a.dbar_slots.push_back(v + 1);
                    }
                    multiply_in(branch, series_of_bipoly(du), j, N + 8 * k);
                    multiply_in(branch, inv_conj, j, N + 8 * k);
                    forked.insert(forked.end(), branch.begin(), branch.end());
                }
            }
            atoms = std::move(forked);
        }
    }

    multiply_in(atoms, series_of_bipoly(phi.coeff), 0, N + 8 * k);

    // Evaluate each atom by stagewise lambda limits.
    OracleValue out;
    int conv_sign = ((k * (k + 1) / 2) % 2) ? -1 : 1;
    for (const auto& a : atoms) {
        // angular selectors
        bool angular_ok = true;
        for (int v = 0; v < k; ++v)
            if (a.holo[v] != a.anti[v]) {
                angular_ok = false;
                break;
            }
        if (!angular_ok) continue;

        // wedge word and sign
        std::vector<Diff> word;
        for (auto it = a.dbar_slots.rbegin(); it != a.dbar_slots.rend(); ++it)
            word.push_back({*it, true});
        for (int i : phi.holo) word.push_back({i, false});
        for (int j : phi.anti) word.push_back({j, true});
        int sign = sort_wedge_word(word);
        if (sign == 0) continue;
        if ((int)word.size() != 2 * k) continue;
        sign *= conv_sign;

        std::vector<int> offset(k);
        for (int v = 0; v < k; ++v) offset[v] = a.holo[v] + a.anti[v] + 2;

        std::vector<bool> consumed(k, false);
        std::vector<std::vector<int>> w = weight;  // mutable copy (stagewise zeroing)
        GaussianRational val = a.coef;
        bool dead = false;
        for (int j = 0; j < m && !dead; ++j) {
            // pure poles of stage j
            std::vector<int> poles;
            for (int v = 0; v < k; ++v) {
                if (consumed[v] || offset[v] != 0) continue;
                if (w[j][v] == 0) continue;
                bool pure = true;
                for (int j2 = j + 1; j2 < m; ++j2)
                    if (w[j2][v] != 0) pure = false;
                if (pure) poles.push_back(v);
            }
            int net = a.lam[j] - (int)poles.size();
            if (net > 0) {
                dead = true;  // lambda_j times a regular factor
                break;
            }
            if (net < 0)
                throw std::logic_error("mellin oracle: divergent atom (unmatched radial pole)");
            for (int v : poles) {
                val /= GaussianRational(rat(w[j][v]));
                consumed[v] = true;
            }
            for (int v = 0; v < k; ++v) w[j][v] = 0;  // substitute lambda_j = 0
        }
        if (dead) continue;

        bool cutoff_dep = false;
        for (int v = 0; v < k && !dead; ++v) {
            if (consumed[v]) continue;
            if (offset[v] <= 0)
                throw std::logic_error("mellin oracle: unconsumed divergent radial direction");
            // principal-value finite part against the cutoff
            if (cutoff == CutoffModel::sharp_polydisc)
                val *= GaussianRational(Rational(1) / offset[v]);
            else
                val *= GaussianRational(bump_radial_integral(offset[v], cutoff_radius));
            cutoff_dep = true;
        }
        if (dead || val.is_zero()) continue;

        // per-variable measure and angular factors: (2i)(2 pi) = 2 tau per variable
        GaussianRational two_pow(1);
        for (int v = 0; v < k; ++v) two_pow *= GaussianRational(2);
        if (sign < 0) two_pow = -two_pow;
        out.value.add(Scalar(val * two_pow, k));
        if (cutoff_dep) out.cutoff_dependent = true;
    }
    return out;
}

}  // namespace rforge

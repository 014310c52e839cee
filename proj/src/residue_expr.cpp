#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

#include "rforge/currents.hpp"

namespace rforge {

int ResidueTerm::residue_count() const {
    int r = 0;
    for (int b : res)
        if (b > 0) ++r;
    return r;
}

std::string ResidueTerm::str() const {
    std::ostringstream os;
    os << scalar.str();
    for (int i = 0; i < arity(); ++i)
        if (pv[i]) os << "*pv(1/t" << (i + 1) << "^" << pv[i] << ")";
    for (int i = 0; i < arity(); ++i)
        if (res[i]) os << "*dbar(1/t" << (i + 1) << "^" << res[i] << ")";
    if (!unit_den.is_constant()) os << "*(1/(" << unit_den.str() << "))";
    os << "*(" << coeff.str() << ")";
    for (int i : form_holo) os << "^dt" << i;
    for (int j : form_anti) os << "^~dt" << j;
    if (!grade.empty()) {
        os << " (x)";
        for (int g : grade) os << " e" << g;
    }
    return os.str();
}

ResidueExpr ResidueExpr::operator-() const {
    ResidueExpr e = *this;
    for (auto& t : e.terms) t.scalar = -t.scalar;
    return e;
}

ResidueExpr& ResidueExpr::operator+=(const ResidueExpr& o) {
    if (terms.empty()) arity = o.arity;
    if (o.arity != arity && !o.terms.empty()) throw argument_error("ResidueExpr arity mismatch");
    for (const auto& t : o.terms) terms.push_back(t);
    return *this;
}

bool operator==(const ResidueExpr& a, const ResidueExpr& b) {
    ResidueExpr na = normalize(a), nb = normalize(b);
    if (na.terms.size() != nb.terms.size()) return false;
    for (std::size_t i = 0; i < na.terms.size(); ++i) {
        const auto& x = na.terms[i];
        const auto& y = nb.terms[i];
        if (x.pv != y.pv || x.res != y.res || x.unit_den != y.unit_den || x.coeff != y.coeff ||
            x.form_holo != y.form_holo || x.form_anti != y.form_anti || x.grade != y.grade)
            return false;
        if (!(x.scalar == y.scalar)) return false;
    }
    return true;
}

std::string ResidueExpr::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) os << "  +  ";
        os << terms[i].str();
    }
    return os.str();
}

namespace {

using TermKey = std::tuple<std::vector<int>, std::vector<int>, BiPoly, IndexSet, IndexSet, IndexSet>;

struct TermKeyLess {
    bool operator()(const TermKey& a, const TermKey& b) const {
        if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
        if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
        if (std::get<3>(a) != std::get<3>(b)) return std::get<3>(a) < std::get<3>(b);
        if (std::get<4>(a) != std::get<4>(b)) return std::get<4>(a) < std::get<4>(b);
        if (std::get<5>(a) != std::get<5>(b)) return std::get<5>(a) < std::get<5>(b);
        return std::get<2>(a) < std::get<2>(b);
    }
};

}  // namespace

ResidueExpr normalize(const ResidueExpr& e) {
    int k = e.arity;
    std::map<TermKey, BiPoly, TermKeyLess> bucket;

    for (const auto& t : e.terms) {
        if (t.scalar.is_zero() || t.coeff.is_zero()) continue;

        // R3: a conjugate differential in a residue variable exhausts degree.
        bool dead = false;
        for (int j : t.form_anti)
            if (t.res[j - 1] > 0) dead = true;
        if (dead) continue;

        // R6 safeguard: purge if the residue support codimension exceeds the
        // anti-degree (cannot fire on a well-formed single term; kept as the
        // documented rule).
        if (t.residue_count() > t.anti_degree()) continue;

        // Canonical unit: denominator scaled to constant term 1.
        BiPoly den = t.unit_den;
        Scalar den0 = den.constant_term();
        if (den0.is_zero())
            throw factorization_error("unit denominator vanishes at the residue support point");
        Scalar scale(GaussianRational(1) / den0.coef, -den0.tau_power);
        den *= scale;

        // fold the unit rescale into the coefficient: coeff/den = (coeff*scale)/(den*scale)
        BiPoly c = t.coeff * (t.scalar * scale);

        // Split the coefficient monomial by monomial: R1, R2, R4.
        for (const auto& [mk, mc] : c.terms()) {
            std::vector<int> pv = t.pv, res = t.res;
            Multidegree h = mk.holo, a = mk.anti;
            bool drop = false;
            for (int i = 0; i < k && !drop; ++i) {
                if (res[i] > 0) {
                    if (a[i] > 0) drop = true;                 // R2
                    else if (h[i] >= res[i]) drop = true;       // R1, exponent exhausted
                    else {
                        res[i] -= h[i];                         // R1
                        h[i] = 0;
                    }
                } else if (pv[i] > 0 && h[i] > 0) {
                    int r = std::min(pv[i], (int)h[i]);         // R4, Laurent cancellation
                    pv[i] -= r;
                    h[i] -= r;
                }
            }
            if (drop) continue;
            BiPoly mono = BiPoly::monomial(k, h, a, mc);
            TermKey key{pv, res, den, t.form_holo, t.form_anti, t.grade};
            auto it = bucket.find(key);
            if (it == bucket.end())
                bucket.emplace(std::move(key), mono);
            else
                it->second += mono;
        }
    }

    ResidueExpr out(k);
    for (auto& [key, coeff] : bucket) {
        if (coeff.is_zero()) continue;
        ResidueTerm t(k);
        t.pv = std::get<0>(key);
        t.res = std::get<1>(key);
        t.unit_den = std::get<2>(key);
        t.form_holo = std::get<3>(key);
        t.form_anti = std::get<4>(key);
        t.grade = std::get<5>(key);
        t.coeff = coeff;
        t.scalar = Scalar(1);
        out.terms.push_back(std::move(t));
    }
    return out;
}

ChartFactorization factor_monomial_unit(const BiPoly& f) {
    if (f.is_zero()) throw factorization_error("cannot factor the zero polynomial");
    if (!f.is_holomorphic()) throw factorization_error("chart factorization needs a holomorphic polynomial");
    int k = f.arity();
    Multidegree content = f.holo_content();
    BiPoly rest = f;
    for (int v = 1; v <= k; ++v)
        if (content[v - 1] > 0) rest = rest.divide_monomial(v, content[v - 1]);
    if (rest.constant_term().is_zero())
        throw factorization_error("remainder vanishes at the origin; monomialize first: " + f.str());
    ChartFactorization out;
    out.expo = content;
    out.unit = SmoothUnit(rest, BiPoly::constant(k, Scalar(1)), std::vector<GaussianRational>(k));
    return out;
}

namespace {

int hops_before(const std::vector<int>& res, int var) {
    int h = 0;
    for (int j = 0; j < var - 1; ++j)
        if (res[j] > 0) ++h;
    return h;
}

/// The dbar of a unit factor is a residue current on the unit's zero set; a
/// term absorbs it to zero exactly when every variable of the unit already
/// carries a conjugate differential or residue factor.
bool unit_dbar_annihilated(const BiPoly& unit_poly, const ResidueTerm& t) {
    if (unit_poly.is_constant()) return true;
    for (int v = 1; v <= t.arity(); ++v) {
        bool involved = unit_poly.degree_in(v, false) > 0;
        if (!involved) continue;
        bool killed = t.res[v - 1] > 0 ||
                      std::find(t.form_anti.begin(), t.form_anti.end(), v) != t.form_anti.end();
        if (!killed) return false;
    }
    return true;
}

}  // namespace

ResidueExpr pv_mul(const ChartFactorization& f, const ResidueExpr& T) {
    ResidueExpr input = normalize(T);
    int k = input.arity;
    if ((int)f.expo.size() != k) throw argument_error("factorization arity mismatch");
    const BiPoly& num = f.unit.num();
    const BiPoly& den = f.unit.den();
    if (num.constant_term().is_zero())
        throw factorization_error("unit vanishes on the residue support point");

    ResidueExpr out(k);
    for (const auto& t : input.terms) {
        bool dead = false;
        for (int i = 0; i < k; ++i)
            if (f.expo[i] > 0 && t.res[i] > 0) dead = true;  // PV meets residue: annihilates
        if (dead) continue;
        ResidueTerm nt = t;
        for (int i = 0; i < k; ++i) nt.pv[i] += f.expo[i];
        nt.coeff = nt.coeff * den;
        nt.unit_den = nt.unit_den * num;
        out.terms.push_back(std::move(nt));
    }
    return normalize(out);
}

ResidueExpr dbar_wedge(const ChartFactorization& f, const ResidueExpr& T) {
    ResidueExpr input = normalize(T);
    int k = input.arity;
    if ((int)f.expo.size() != k) throw argument_error("factorization arity mismatch");
    const BiPoly& num = f.unit.num();
    const BiPoly& den = f.unit.den();
    if (num.constant_term().is_zero())
        throw factorization_error("unit vanishes on the residue support point");
    if (!den.is_constant())
        throw factorization_error("dbar_wedge expects a polynomial chart function (unit = num/const)");

    ResidueExpr out(k);
    for (const auto& t : input.terms) {
        // Smooth correction term dbar(1/unit) ^ PV(1/t^m) T must die by degree
        // exhaustion; otherwise the chart data needs further resolution.
        if (!unit_dbar_annihilated(num, t))
            throw factorization_error(
                "dbar of the unit factor survives; monomialize the tuple first (unit " + num.str() +
                ")");

        for (int i = 0; i < k; ++i) {
            if (f.expo[i] == 0) continue;
            if (t.res[i] > 0) continue;  // repeated conjugate differential
            if (std::find(t.form_anti.begin(), t.form_anti.end(), i + 1) != t.form_anti.end())
                continue;
            bool dead = false;
            ResidueTerm nt = t;
            // residue insertion at variable i merges any standing PV exponent
            nt.res[i] = f.expo[i] + nt.pv[i];
            nt.pv[i] = 0;
            for (int j = 0; j < k; ++j) {
                if (j == i || f.expo[j] == 0) continue;
                if (nt.res[j] > 0) {
                    dead = true;  // PV factor meets a residue variable
                    break;
                }
                nt.pv[j] += f.expo[j];
            }
            if (dead) continue;
            if (hops_before(t.res, i + 1) % 2) nt.scalar = -nt.scalar;
            nt.coeff = nt.coeff * den;
            nt.unit_den = nt.unit_den * num;
            out.terms.push_back(std::move(nt));
        }
    }
    return normalize(out);
}

ResidueExpr restrict_complement(const ResidueExpr& T, const Multidegree& h) {
    ResidueExpr input = normalize(T);
    bool any = false;
    for (int e : h)
        if (e > 0) any = true;
    if (!any) throw argument_error("restriction needs a nonzero monomial");
    ResidueExpr out(input.arity);
    for (const auto& t : input.terms) {
        bool keep = true;
        for (int i = 0; i < input.arity; ++i)
            if (h[i] > 0 && t.res[i] > 0) keep = false;
        if (keep) out.terms.push_back(t);
    }
    return out;
}

ResidueExpr dbar_expr(const ResidueExpr& T) {
    ResidueExpr input = normalize(T);
    int k = input.arity;
    ResidueExpr out(k);
    for (const auto& t : input.terms) {
        if (!unit_dbar_annihilated(t.unit_den, t))
            throw factorization_error("dbar of a unit denominator survives; out of desk scope");

        // PV factors become residue factors.
        for (int i = 0; i < k; ++i) {
            if (t.pv[i] == 0) continue;
            if (t.res[i] > 0) continue;  // cannot happen on normal forms (pv*res = 0)
            if (std::find(t.form_anti.begin(), t.form_anti.end(), i + 1) != t.form_anti.end())
                continue;
            ResidueTerm nt = t;
            nt.res[i] = nt.pv[i];
            nt.pv[i] = 0;
            if (hops_before(t.res, i + 1) % 2) nt.scalar = -nt.scalar;
            out.terms.push_back(std::move(nt));
        }

        // Conjugate derivatives of the smooth coefficient.
        int r = t.residue_count();
        for (int v = 1; v <= k; ++v) {
            if (t.res[v - 1] > 0) continue;  // dt̄_v clash with the residue factor
            BiPoly dc = t.coeff.wirtinger_derive(v, true);
            if (dc.is_zero()) continue;
            if (std::find(t.form_anti.begin(), t.form_anti.end(), v) != t.form_anti.end()) continue;
            ResidueTerm nt = t;
            nt.coeff = dc;
            int hops = r + (int)t.form_holo.size();
            for (int j : t.form_anti)
                if (j < v) ++hops;
            if (hops % 2) nt.scalar = -nt.scalar;
            nt.form_anti.push_back(v);
            std::sort(nt.form_anti.begin(), nt.form_anti.end());
            out.terms.push_back(std::move(nt));
        }
    }
    return normalize(out);
}

}  // namespace rforge

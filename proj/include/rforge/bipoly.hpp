#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "rforge/numbers.hpp"

namespace rforge {

using Multidegree = std::vector<int32_t>;

inline int degree_sum(const Multidegree& m) { return std::accumulate(m.begin(), m.end(), 0); }

/// Monomial key: holomorphic and antiholomorphic multidegrees.
/// Ordered graded-lexicographically on the concatenated (holo, anti) vector;
/// this is the canonical term order used for serialization and normal forms.
struct MonoKey {
    Multidegree holo, anti;

    friend bool operator==(const MonoKey& a, const MonoKey& b) {
        return a.holo == b.holo && a.anti == b.anti;
    }
    friend bool operator<(const MonoKey& a, const MonoKey& b) {
        int da = degree_sum(a.holo) + degree_sum(a.anti);
        int db = degree_sum(b.holo) + degree_sum(b.anti);
        if (da != db) return da < db;
        if (a.holo != b.holo) return a.holo < b.holo;
        return a.anti < b.anti;
    }
};

/// Finite polynomial in chart variables t1..tk and their formal conjugates,
/// with exact Scalar coefficients.  Conjugation is purely formal: ~t is an
/// independent symbol; evaluation substitutes the conjugate value.
class BiPoly {
public:
    BiPoly() : arity_(0) {}
    explicit BiPoly(int arity) : arity_(arity) {}

    static BiPoly constant(int arity, Scalar c);
    static BiPoly variable(int arity, int var_index, bool conjugate = false, int power = 1);
    static BiPoly monomial(int arity, Multidegree holo, Multidegree anti, Scalar c);

    int arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == MonoKey{zero_md(), zero_md()});
    }
    bool is_holomorphic() const;
    Scalar constant_term() const;

    int total_degree() const;
    int degree_in(int var_index, bool conjugate) const;

    const std::map<MonoKey, Scalar>& terms() const { return terms_; }

    void set(const MonoKey& k, Scalar c) {
        if (c.is_zero())
            terms_.erase(k);
        else
            terms_[k] = std::move(c);
    }
    void add_term(const MonoKey& k, const Scalar& c);

    BiPoly operator-() const;
    BiPoly& operator+=(const BiPoly& o);
    BiPoly& operator-=(const BiPoly& o);
    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    BiPoly& operator*=(const BiPoly& o) { return *this = *this * o; }
    BiPoly& operator*=(const Scalar& s);
    friend BiPoly operator*(BiPoly a, const Scalar& s) { return a *= s; }
    friend bool operator==(const BiPoly& a, const BiPoly& b) {
        return a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }
    friend bool operator<(const BiPoly& a, const BiPoly& b);

    BiPoly pow(int e) const;

    /// Formal Wirtinger partial derivative; t and ~t are independent symbols.
    BiPoly wirtinger_derive(int var_index, bool conjugate) const;

    /// Formal conjugate: swaps holo/anti exponents and conjugates coefficients
    /// (tau = 2*pi*i picks up (-1)^power).
    BiPoly conj() const;

    /// Substitute t_i -> subs[i] (holomorphic polynomials in a new variable
    /// set) and ~t_i -> conj(subs[i]).  Used for chart pullbacks.
    BiPoly substitute(const std::vector<BiPoly>& subs) const;

    /// Monomial substitution t_i -> prod_j s_j^{M(i,j)}; requires the result
    /// exponents to stay nonnegative.
    BiPoly substitute_monomial(const std::vector<std::vector<int>>& expo, int new_arity) const;

    /// Kill every term containing ~t_i (the formal conjugate of variable i).
    BiPoly drop_anti(int var_index) const;

    /// Exact evaluation at a Gaussian rational point (conjugates get the
    /// conjugate values).  Result must have tau-free or uniform tau content;
    /// returns a Scalar.
    Scalar evaluate(const std::vector<GaussianRational>& point) const;

    /// Partial evaluation of one variable (and its conjugate) at an exact value.
    BiPoly evaluate_var(int var_index, const GaussianRational& value) const;

    /// Shift t -> t + p (and conjugates accordingly); exact.
    BiPoly shift(const std::vector<GaussianRational>& point) const;

    /// Divide by a single-variable power t_var^e; throws if not divisible.
    BiPoly divide_monomial(int var_index, int e) const;

    /// Componentwise minimum of holomorphic exponents over all terms
    /// (the monomial content); zero polynomial yields all zeros.
    Multidegree holo_content() const;

    std::string str(const std::string& var_prefix = "t") const;

    Multidegree zero_md() const { return Multidegree(arity_, 0); }

private:
    int arity_;
    std::map<MonoKey, Scalar> terms_;
};

std::ostream& operator<<(std::ostream& os, const BiPoly& p);

/// Parse the grammar produced by BiPoly::str: sums of
/// coefficient*t1^a*~t2^b monomials; coefficients as Scalar literals or
/// plain rationals.  Shared with the DSL.
BiPoly bipoly_from_string(const std::string& text, int arity, const std::string& var_prefix = "t");

}  // namespace rforge

#pragma once

#include <vector>

#include "rforge/bipoly.hpp"

namespace rforge {

/// Ratio of holomorphic polynomials with a distinguished base point where the
/// denominator does not vanish (checked on construction).  Used for the unit
/// factors of monomial x unit chart factorizations.
class SmoothUnit {
public:
    SmoothUnit() = default;
    SmoothUnit(BiPoly num, BiPoly den, std::vector<GaussianRational> base_point);

    static SmoothUnit one(int arity);

    const BiPoly& num() const { return num_; }
    const BiPoly& den() const { return den_; }
    const std::vector<GaussianRational>& base_point() const { return base_; }
    int arity() const { return num_.arity(); }

    bool is_one() const;

    SmoothUnit reciprocal() const;                   // swaps num/den; checks the new den
    SmoothUnit times(const SmoothUnit& o) const;     // pointwise product
    Scalar value_at_base() const;

    /// Canonical representative: denominator scaled so its base-point value is
    /// 1; the scale moves into the numerator.  Equal units compare equal.
    void canonicalize();

    friend bool operator==(const SmoothUnit& a, const SmoothUnit& b) {
        return a.num_ == b.num_ && a.den_ == b.den_ && a.base_ == b.base_;
    }
    friend bool operator<(const SmoothUnit& a, const SmoothUnit& b);

    std::string str(const std::string& var_prefix = "t") const;

private:
    BiPoly num_, den_;
    std::vector<GaussianRational> base_;
};

/// Quotient of bi-polynomials with holomorphic denominator; supports exact
/// Wirtinger differentiation via the quotient rule.  The workhorse for
/// evaluating derivatives of smooth coefficients at residue support points.
struct RationalFn {
    BiPoly num;
    BiPoly den;  // holomorphic, nonzero at the evaluation point

    static RationalFn from_poly(BiPoly p) {
        int k = p.arity();
        return {std::move(p), BiPoly::constant(k, Scalar(1))};
    }

    RationalFn wirtinger_derive(int var_index, bool conjugate) const {
        // (P/Q)' = (P'Q - PQ')/Q^2; for conjugate derivatives Q' = 0.
        if (conjugate) return {num.wirtinger_derive(var_index, true), den};
        BiPoly dn = num.wirtinger_derive(var_index, false) * den -
                    num * den.wirtinger_derive(var_index, false);
        return {dn, den * den};
    }

    RationalFn drop_anti(int var_index) const { return {num.drop_anti(var_index), den}; }

    Scalar evaluate(const std::vector<GaussianRational>& point) const {
        Scalar d = den.evaluate(point);
        if (d.is_zero()) throw argument_error("rational function denominator vanishes at point");
        Scalar n = num.evaluate(point);
        if (d.tau_power != 0) throw argument_error("tau in denominator");
        return Scalar(n.coef / d.coef, n.tau_power);
    }
};

}  // namespace rforge

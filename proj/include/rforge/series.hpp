#pragma once

#include "rforge/bipoly.hpp"

namespace rforge {

/// Drop every term of total degree > N.
inline BiPoly truncate_total(const BiPoly& p, int N) {
    BiPoly out(p.arity());
    for (const auto& [k, c] : p.terms())
        if (degree_sum(k.holo) + degree_sum(k.anti) <= N) out.add_term(k, c);
    return out;
}

/// Multiplicative inverse of a power series with nonzero constant term,
/// truncated at total degree N.  Exact coefficients.
inline BiPoly series_inverse(const BiPoly& den, int N) {
    Scalar c0 = den.constant_term();
    if (c0.is_zero()) throw argument_error("series inverse needs nonzero constant term");
    if (c0.tau_power != 0) throw argument_error("tau in series denominator");
    int k = den.arity();
    Scalar inv0(GaussianRational(1) / c0.coef);
    // den = c0 (1 - u) with u of positive order: 1/den = (1/c0) sum u^j.
    BiPoly u = BiPoly::constant(k, Scalar(1)) - den * Scalar(inv0);
    BiPoly acc = BiPoly::constant(k, Scalar(1));
    BiPoly upow = BiPoly::constant(k, Scalar(1));
    for (int j = 1; j <= N; ++j) {
        upow = truncate_total(upow * u, N);
        if (upow.is_zero()) break;
        acc += upow;
    }
    return acc * Scalar(inv0);
}

}  // namespace rforge

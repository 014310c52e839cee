#pragma once

#include <vector>

#include "rforge/currents.hpp"

namespace rforge {

/// One regularized factor of an iterated-continuation product: |f|^{2 lambda}/f
/// (principal value) or dbar|f|^{2 lambda}/f (residue).  The factor must be
/// monomial x unit on the chart.
struct LambdaFactor {
    BiPoly poly;
    bool is_residue = true;
};

enum class CutoffModel {
    smooth_bump,     // identically 1 up to R/2, quintic spline down to 0 at R
    sharp_polydisc,  // indicator of the closed unit polydisc (toric cone mode)
};

struct OracleValue {
    ScalarSum value;
    bool cutoff_dependent = false;
};

/// Independent evaluation of
///   < w_m ... w_1 , phi >  with  w_j in {|f_j|^{2 lambda_j}/f_j,
///                                        dbar|f_j|^{2 lambda_j}/f_j }
/// by exact Mellin bookkeeping: series-expand the unit content, split into
/// monomial atoms, and take the iterated limits lambda_1 -> 0, ...,
/// lambda_m -> 0 stagewise (innermost factor first).  Residue-stage pole
/// extraction is exact and cutoff-free; surviving principal-value parts are
/// finite radial integrals against the chosen cutoff, still computed in exact
/// rational arithmetic.
///
/// factors[0] is the innermost factor f_1.  This code path shares nothing
/// with the rewrite engine; it is the oracle the rewrite rules are checked
/// against.
OracleValue mellin_pair(const std::vector<LambdaFactor>& factors, const TestForm& phi,
                        CutoffModel cutoff = CutoffModel::smooth_bump,
                        const Rational& cutoff_radius = Rational(1), int series_order = -1);

}  // namespace rforge

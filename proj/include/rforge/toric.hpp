#pragma once

#include <Eigen/Core>

#include "rforge/mellin.hpp"

namespace rforge {

class resolution_error : public std::runtime_error {
public:
    explicit resolution_error(const std::string& what) : std::runtime_error(what) {}
};

/// One monomial chart of an atlas over a parameter chart: t_i = prod_j
/// s_j^{M(i,j)} with M a lattice isomorphism on its cone.  The cone owned by
/// the chart is spanned by the columns of M; sibling cones partition the
/// positive orthant with disjoint interiors.
struct ToricChart {
    Eigen::MatrixXi M;
    std::vector<ChartFactorization> factor_data;  // one per target function

    int arity() const { return (int)M.rows(); }
    /// The chart map as exponent rows, as consumed by substitute_monomial.
    std::vector<std::vector<int>> rows() const;
    /// Pull a base-chart polynomial through the substitution.
    BiPoly pull(const BiPoly& p) const;
    /// The chart as a polynomial map (for form pullbacks).
    NormalizationChart as_chart() const;
    /// True when this chart owns the axis {s_j = 0} under the
    /// lexicographically-smallest-generator tie break among `siblings`.
    bool owns_axis(int j, const std::vector<ToricChart>& siblings) const;
};

struct ResolutionAtlas {
    int arity = 0;
    std::vector<BiPoly> targets;
    std::vector<ToricChart> charts;
};

/// Monomialization of chart functions, k <= 2.  Functions that already factor
/// as monomial x unit give the identity atlas; otherwise iterated quadratic
/// blow-ups are applied until every target factors on every leaf chart, within
/// the step budget.
ResolutionAtlas monomialize(const std::vector<BiPoly>& funcs, int blowup_budget = 25);

/// Regular subdivision refining the common Newton fan of the targets'
/// monomial parts (the |f|^2 min structure): on each chart one target's
/// monomial divides the others'.  Used by the numeric continuation engine.
ResolutionAtlas min_structure_atlas(const std::vector<BiPoly>& funcs, int blowup_budget = 25);

/// Exact partition check: the owned cones tile the positive orthant with
/// disjoint interiors.
bool atlas_partitions_orthant(const ResolutionAtlas& atlas);

/// Iterated-lambda pairing computed through the atlas: each chart integrates
/// over its owned cone (the unit polydisc upstairs maps onto it exactly), and
/// the chart values add.  Factors and the test form are given in base-chart
/// coordinates.
OracleValue toric_lambda_pairing(const ResolutionAtlas& atlas,
                                 const std::vector<LambdaFactor>& factors, const TestForm& phi);

/// Push-forward pairing of per-chart expressions through the atlas composed
/// with an ambient chart map.  Point-supported terms at chart origins are
/// exact; a term supported on an axis the chart does not own raises an
/// ambiguity error (never silently double-counts).
ScalarSum pushforward_from_atlas(const ResolutionAtlas& atlas, const NormalizationChart& ambient,
                                 const std::vector<ResidueExpr>& per_chart,
                                 const AmbientForm& phi);

}  // namespace rforge

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rforge/space.hpp"

namespace rforge {

class not_exactly_evaluable : public std::runtime_error {
public:
    explicit not_exactly_evaluable(const std::string& what) : std::runtime_error(what) {}
};

class factorization_error : public std::runtime_error {
public:
    explicit factorization_error(const std::string& what) : std::runtime_error(what) {}
};

/// One elementary-current term on a chart, written in the fixed factor order
///
///   scalar . PV(prod t_i^{-pv_i}) . [ ^_{i in res, ascending} dbar(1/t_i^{res_i}) ]
///          ^ (coeff / unit_den) dt_I ^ ~dt_J  (x) e_grade .
///
/// Invariants after normalization: pv_i * res_i = 0; coeff carries no t_i or
/// ~t_i for residue variables; form_anti avoids residue variables; unit_den
/// is holomorphic with unit value 1 at the origin.
struct ResidueTerm {
    Scalar scalar{1};
    std::vector<int> pv;   // principal-value exponents a_i >= 0
    std::vector<int> res;  // residue exponents b_i >= 0
    BiPoly unit_den;       // denominator of the smooth unit factor
    BiPoly coeff;
    IndexSet form_holo, form_anti;
    IndexSet grade;

    explicit ResidueTerm(int arity)
        : pv(arity, 0),
          res(arity, 0),
          unit_den(BiPoly::constant(arity, Scalar(1))),
          coeff(BiPoly::constant(arity, Scalar(1))) {}

    int arity() const { return (int)pv.size(); }
    int residue_count() const;
    int anti_degree() const { return residue_count() + (int)form_anti.size(); }
    bool point_supported() const { return residue_count() == arity(); }

    std::string str() const;
};

/// Normal-form sum of elementary terms on one chart.
struct ResidueExpr {
    int arity = 0;
    std::vector<ResidueTerm> terms;

    ResidueExpr() = default;
    explicit ResidueExpr(int k) : arity(k) {}

    static ResidueExpr unit(int k) {
        ResidueExpr e(k);
        e.terms.emplace_back(k);
        return e;
    }
    static ResidueExpr zero(int k) { return ResidueExpr(k); }

    bool is_zero() const { return terms.empty(); }
    ResidueExpr operator-() const;
    ResidueExpr& operator+=(const ResidueExpr& o);
    friend ResidueExpr operator+(ResidueExpr a, const ResidueExpr& b) { return a += b; }
    friend ResidueExpr operator-(ResidueExpr a, const ResidueExpr& b) { return a += -b; }
    friend bool operator==(const ResidueExpr& a, const ResidueExpr& b);

    std::string str() const;
};

/// Rewrite to the canonical normal form (rules R1-R6): residue-exponent
/// absorption, conjugate annihilation, conjugate-differential exhaustion,
/// Laurent cancellation against PV exponents, canonical residue ordering and
/// the support-codimension safeguard.  Idempotent.
ResidueExpr normalize(const ResidueExpr& e);

/// Monomial x unit factorization of a chart polynomial: f = t^expo * unit
/// with unit nonvanishing at the origin.  Throws factorization_error when the
///残 remainder vanishes at the origin (resolve first).
struct ChartFactorization {
    Multidegree expo;
    SmoothUnit unit;
};
ChartFactorization factor_monomial_unit(const BiPoly& f);

/// (1/f) . T for f = unit x monomial; PV exponents pick up the monomial, the
/// unit divides the smooth part.  A PV factor meeting a residue variable
/// annihilates the term (adjudicated against the lambda oracle).
ResidueExpr pv_mul(const ChartFactorization& f, const ResidueExpr& T);

/// dbar(1/f) ^ T by the one-lambda expansion over the monomial's variables,
/// innermost-first ordering.  The smooth correction term dbar(1/unit) must be
/// annihilated by degree exhaustion; otherwise a factorization_error asks the
/// caller to monomialize.
ResidueExpr dbar_wedge(const ChartFactorization& f, const ResidueExpr& T);

/// 1_{complement of {h=0}} T for a monomial h: drops every term with a
/// residue factor in a variable dividing h.
ResidueExpr restrict_complement(const ResidueExpr& T, const Multidegree& h);

/// Symbolic dbar of the expression: PV factors become residue factors,
/// coefficients contribute their conjugate derivatives.
ResidueExpr dbar_expr(const ResidueExpr& T);

/// Test form on a chart: coeff dt_I ^ ~dt_J times an implicit cutoff that is
/// identically 1 near the support point.
struct TestForm {
    int arity = 0;
    BiPoly coeff;
    IndexSet holo, anti;

    TestForm(int k, BiPoly c, IndexSet I, IndexSet J)
        : arity(k), coeff(std::move(c)), holo(std::move(I)), anti(std::move(J)) {}
};

/// Exact pairing of a point-supported expression with a test form under the
/// frozen orientation (dbar(1/t).(chi dt) = 2*pi*i).  Non-point-supported
/// terms are accepted only when their pairing vanishes identically (zero
/// integrand or an odd angular phase in every free variable); otherwise
/// not_exactly_evaluable points to the numeric engine.
ScalarSum evaluate(const ResidueExpr& T, const TestForm& phi);

/// Ambient monomial test form z^alpha ~z^beta dz_I ^ ~dz_J (times the cutoff).
struct AmbientForm {
    Multidegree alpha, beta;
    IndexSet holo, anti;

    std::string str() const;
};

/// Current on a presented space: one expression per chart.  The canonical
/// flag marks Coleff-Herrera-produced representatives, the only ones for
/// which multiplication by weakly holomorphic functions is defined.
struct CurrentOnSpace {
    const SpacePresentation* space = nullptr;
    std::vector<ResidueExpr> charts;
    bool canonical_upstairs = false;
};

/// Pulls the ambient form back through every chart, pairs with that chart's
/// expression and sums.  Terms whose residue support pushes forward with
/// codimension exceeding the anti-degree are purged (they vanish downstairs).
ScalarSum pushforward_pair(const CurrentOnSpace& T, const AmbientForm& phi);

/// All ambient monomial forms with |alpha| + |beta| <= degree_bound.
std::vector<AmbientForm> ambient_forms_up_to(int n, int degree_bound);

struct CompareReport {
    bool equal = true;
    std::optional<AmbientForm> witness;
    ScalarSum lhs, rhs;
    int bound = 0;
    int skipped_forms = 0;  // pairings that are cutoff-dependent on either side
};

/// Equality of two currents on Z tested against every pulled-back ambient
/// monomial test form up to the degree bound.  Forms whose pairing is
/// cutoff-dependent on either side (non-point-supported data) are skipped and
/// counted; on point-supported inputs nothing is skipped.
CompareReport compare_on_Z(const CurrentOnSpace& mu, const CurrentOnSpace& nu, int degree_bound);

/// g T = pi_*((pi^* g) T') for the canonical upstairs representative T'.
CurrentOnSpace weak_mul(const WeakFunction& g, const CurrentOnSpace& T);

/// phi |h|^{2 lambda} mu |_{lambda=0} for a monomial tuple h with
/// 1_{P_phi} mu = 0; independent of the choice of h.
CurrentOnSpace weak_mul_intrinsic(const WeakFunction& phi, const CurrentOnSpace& mu,
                                  const std::vector<Multidegree>& h_monomials_per_chart);

}  // namespace rforge

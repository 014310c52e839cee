#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rforge/form.hpp"
#include "rforge/groebner.hpp"
#include "rforge/smooth_unit.hpp"

namespace rforge {

/// One normalization chart: a polynomial map from an affine parameter space
/// C^k into the ambient C^n.  Finiteness and generic injectivity onto the
/// image component are user assertions; the engine records them and cannot
/// verify them.
struct NormalizationChart {
    int arity = 0;                   // k
    std::vector<BiPoly> components;  // n holomorphic polynomials in t1..tk

    int ambient_dim() const { return (int)components.size(); }

    /// Substitution z_i -> pi_i(t) of an ambient polynomial in z (and ~z).
    BiPoly pullback(const BiPoly& ambient_poly) const;

    /// Pullback of the ambient differential dz_i as a chart 1-form.
    Form pullback_dz(int ambient_index, bool anti) const;

    /// Jacobian maximal-minors ideal (rank-drop locus of the chart map).
    std::vector<BiPoly> critical_minors() const;
};

struct SpacePresentation {
    int ambient_dim = 0;
    std::vector<NormalizationChart> charts;

    SpacePresentation() = default;
    SpacePresentation(int n, std::vector<NormalizationChart> cs);

    int dimension() const;  // max chart arity (normalization preserves dimension)
};

/// Per-chart pullback of a weakly holomorphic function: a ratio of
/// holomorphic chart polynomials (regular where it is used).
struct ChartFn {
    BiPoly num, den;

    static ChartFn poly(BiPoly p) {
        int k = p.arity();
        return {std::move(p), BiPoly::constant(k, Scalar(1))};
    }
    bool is_polynomial() const { return den.is_constant() && !den.is_zero(); }
    /// num/den normalized so a constant denominator becomes 1.
    ChartFn normalized() const;
};

struct WeakFunction {
    const SpacePresentation* space = nullptr;
    std::vector<ChartFn> pullbacks;             // one per chart
    std::optional<BiPoly> ambient_witness;      // polynomial in z, if known
    std::string name;

    const ChartFn& on_chart(int c) const { return pullbacks.at(c); }
};

/// Builds a weak function, checking witness consistency exactly on every
/// chart when a witness is supplied.
WeakFunction make_weak_function(const SpacePresentation& space, std::vector<ChartFn> pullbacks,
                                std::optional<BiPoly> witness = std::nullopt,
                                std::string name = {});

struct ChartVariety {
    int chart = 0;
    GroebnerBasis basis;
    int dimension = -1;  // -1: empty on this chart
    int codimension() const;
};

struct Variety {
    std::vector<ChartVariety> charts;
    int dimension = -1;  // max over charts; -1 when empty everywhere
    bool empty() const { return dimension < 0; }
};

Variety zero_set(const std::vector<WeakFunction>& tuple);

enum class CIVerdict { complete_intersection, not_complete_intersection, empty_zero_set };

std::string to_string(CIVerdict v);

/// Three-valued verdict; the paper's codimension criterion degenerates on an
/// empty zero set, which is reported distinctly.
CIVerdict complete_intersection_verdict(const std::vector<WeakFunction>& tuple);

struct StrongHolomorphyResult {
    enum class Status { yes, no_up_to_bound } status;
    std::optional<BiPoly> witness;  // ambient polynomial when status == yes
    int bound = 0;
};

/// Decides strong holomorphy up to an ambient degree bound by an exact linear
/// solve over all ambient monomials of degree <= bound.  Decisive per bound
/// for polynomial pullbacks.
StrongHolomorphyResult is_strongly_holomorphic(const WeakFunction& w, int degree_bound);

/// A desk-scale chart locus: a coordinate plane {t_i = 0 : i in zero_vars} or
/// a hypersurface {equation = 0}.
struct ChartLocus {
    int chart = 0;
    enum class Kind { plane, hypersurface } kind = Kind::plane;
    std::vector<int> zero_vars;  // 1-based, for planes
    BiPoly equation;             // for hypersurfaces

    bool contains(const std::vector<GaussianRational>& point) const;
    std::string str() const;
};

struct PoleSetResult {
    std::vector<ChartLocus> components;
    int bound = 0;

    bool covers_point(int chart, const std::vector<GaussianRational>& point) const;
};

/// Upstairs locus where the germ fails the degree-bounded strong-holomorphy
/// test after localization, together with the denominator locus.  Result is
/// "up to bound".
PoleSetResult pole_set(const WeakFunction& w, int degree_bound, unsigned seed = 0);

}  // namespace rforge

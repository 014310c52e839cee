#pragma once

#include "rforge/currents.hpp"

namespace rforge {

/// Tuple f_1..f_m with the split index p: residue factors f_1..f_p, principal
/// value factors f_{p+1}..f_m.  Continuation order is f_1 first.
struct CHSpec {
    std::vector<WeakFunction> tuple;
    int residue_count = 0;  // p

    const SpacePresentation* space() const {
        return tuple.empty() ? nullptr : tuple.front().space;
    }
};

/// The product (1/f_m)...(1/f_{p+1}) dbar(1/f_p)^...^dbar(1/f_1), built by
/// iterated lambda continuation on every chart; the result is the canonical
/// upstairs representative.
CurrentOnSpace ch_product(const CHSpec& spec);

/// Mixed-order product: apply the factors in the given order with the given
/// kinds.  No commutation identity is asserted for mixed orders.
CurrentOnSpace ch_product_ordered(const std::vector<WeakFunction>& ordered,
                                  const std::vector<bool>& is_residue);

struct Report {
    enum class Status { passed, failed, skipped } status = Status::passed;
    std::string reason;

    bool ok() const { return status == Status::passed; }
};

/// Verifies dbar T = sum_{j>p} (-1)^{m-j} [product with dbar at slot j]
/// term-exactly on every chart, and certifies supp T inside the chart ideal
/// of the residue tuple's zero set.
Report check_leibniz(const CHSpec& spec);

/// Builds both factor orderings and compares push-forward pairings with the
/// permutation sign on residue factors (PV factors carry no sign).  Skipped
/// with a reason when the complete-intersection hypotheses fail.
/// perm[i] is the 1-based original index of the factor applied at stage i+1.
Report check_commutation(const CHSpec& spec, const std::vector<int>& perm, int bound);

/// index <= p: f_index T = 0; index > p: f_index T equals the product with
/// that PV factor removed.  Complete-intersection gated.
Report check_annihilation(const CHSpec& spec, int index, int bound);

/// Polynomial chart automorphism u = forward(t), t = inverse(u); composition
/// is checked exactly on construction.
struct ChartAutomorphism {
    std::vector<BiPoly> forward, inverse;
};

/// Presentation of the same space through the composed chart map
/// pi o inverse; transports currents implicitly through push-forward pairing.
SpacePresentation transported_presentation(const SpacePresentation& space,
                                           const ChartAutomorphism& phi);

/// Pullbacks of a weak function through the automorphism onto the transported
/// presentation.
WeakFunction transport(const WeakFunction& w, const SpacePresentation& target,
                       const ChartAutomorphism& phi);

/// Transformation law: with g = A f (verified exactly on the g-space charts),
/// both tuples complete intersections, compares mu^f against (det A) mu^g via
/// push-forward pairings up to the bound.
Report transformation_check(const CHSpec& f_spec, const CHSpec& g_spec,
                            const std::vector<std::vector<WeakFunction>>& A_on_g_space,
                            const std::vector<WeakFunction>& f_on_g_space, int bound);

}  // namespace rforge

#pragma once

#include <optional>
#include <vector>

#include "rforge/bipoly.hpp"

namespace rforge {

/// Monomial orders for the Groebner engine.  lex_block with block b is an
/// elimination order for the first b variables (graded comparison on the
/// block dominates).
struct MonomialOrderSpec {
    enum class Kind { grevlex, lex_block } kind = Kind::grevlex;
    int block = 0;

    static MonomialOrderSpec grevlex() { return {Kind::grevlex, 0}; }
    static MonomialOrderSpec eliminate_first(int b) { return {Kind::lex_block, b}; }

    /// Strict "a < b" on exponent vectors.
    bool less(const Multidegree& a, const Multidegree& b) const;

    friend bool operator==(const MonomialOrderSpec& x, const MonomialOrderSpec& y) {
        return x.kind == y.kind && x.block == y.block;
    }
};

/// Ideal of holomorphic chart polynomials with a fixed monomial order.
struct Ideal {
    int arity = 0;
    std::vector<BiPoly> generators;  // holomorphic, nonzero
    MonomialOrderSpec order;

    Ideal() = default;
    Ideal(int k, std::vector<BiPoly> gens, MonomialOrderSpec ord = MonomialOrderSpec::grevlex());
};

class GroebnerBasis {
public:
    GroebnerBasis() = default;

    int arity() const { return arity_; }
    const MonomialOrderSpec& order() const { return order_; }
    const std::vector<BiPoly>& elements() const { return gens_; }
    bool usable() const { return usable_; }

    /// True when the basis contains a nonzero constant (empty variety).
    bool is_unit_ideal() const;

    Multidegree leading_monomial(const BiPoly& p) const;
    BiPoly normal_form(const BiPoly& p) const;
    bool contains(const BiPoly& p) const { return normal_form(p).is_zero(); }

    /// Krull dimension of the affine zero set via maximal independent variable
    /// sets of the leading-term ideal; -1 when the variety is empty.
    int dimension() const;

    friend GroebnerBasis buchberger(const Ideal& ideal, long pair_budget);

private:
    int arity_ = 0;
    MonomialOrderSpec order_;
    std::vector<BiPoly> gens_;
    bool usable_ = true;
};

/// Reduced Groebner basis, deterministic for a fixed order.  Throws
/// resource_error when the S-pair budget is exhausted (the partial basis is
/// flagged unusable in the error path).
GroebnerBasis buchberger(const Ideal& ideal, long pair_budget = 100000);

bool ideal_membership(const BiPoly& p, const GroebnerBasis& basis);

/// Generators of the elimination ideal: members of the basis free of the
/// first `block` variables, re-expressed in the remaining variables.
/// Requires a basis computed with eliminate_first(block).
std::vector<BiPoly> elimination_ideal(const GroebnerBasis& basis, int block);

}  // namespace rforge

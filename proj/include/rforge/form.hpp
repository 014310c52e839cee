#pragma once

#include <map>
#include <utility>
#include <vector>

#include "rforge/bipoly.hpp"

namespace rforge {

using IndexSet = std::vector<int>;  // strictly increasing 1-based variable indices

/// One differential symbol: dt_i (anti=false) or ~dt_i (anti=true).
struct Diff {
    int var;
    bool anti;
    friend bool operator<(const Diff& a, const Diff& b) {
        if (a.anti != b.anti) return !a.anti;
        return a.var < b.var;
    }
    friend bool operator==(const Diff& a, const Diff& b) { return a.var == b.var && a.anti == b.anti; }
};

/// Sorts a wedge word of degree-one symbols into canonical (I, J) order and
/// reports the Koszul sign; returns sign 0 when a symbol repeats.
int sort_wedge_word(std::vector<Diff>& word);

/// Exterior form on a chart: finite sum of dt_I ^ ~dt_J with BiPoly
/// coefficients.  Wedge is graded-anticommutative with exact Koszul signs.
class Form {
public:
    Form() : arity_(0) {}
    explicit Form(int arity) : arity_(arity) {}

    static Form scalar(int arity, BiPoly coeff);
    static Form differential(int arity, int var, bool anti);   // dt_var or ~dt_var
    static Form basis(int arity, IndexSet holo, IndexSet anti, BiPoly coeff);

    int arity() const { return arity_; }
    bool is_zero() const { return comps_.empty(); }

    const std::map<std::pair<IndexSet, IndexSet>, BiPoly>& components() const { return comps_; }

    void add_component(const IndexSet& holo, const IndexSet& anti, const BiPoly& coeff);

    Form operator-() const;
    Form& operator+=(const Form& o);
    friend Form operator+(Form a, const Form& b) { return a += b; }
    Form& operator-=(const Form& o) { return *this += -o; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator*(const Form& f, const BiPoly& p);
    friend Form operator*(const Form& f, const Scalar& s);
    friend bool operator==(const Form& a, const Form& b) {
        return a.arity_ == b.arity_ && a.comps_ == b.comps_;
    }
    friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

    /// Graded-anticommutative product; arities must match.
    friend Form wedge(const Form& a, const Form& b);

    /// Holomorphic exterior derivative: sum_v d(coeff)/dt_v dt_v ^ (component).
    Form d_holo() const;
    /// Antiholomorphic exterior derivative.
    Form d_anti() const;

    std::string str(const std::string& var_prefix = "t") const;

private:
    int arity_;
    std::map<std::pair<IndexSet, IndexSet>, BiPoly> comps_;
};

std::ostream& operator<<(std::ostream& os, const Form& f);

}  // namespace rforge

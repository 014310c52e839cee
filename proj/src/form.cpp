#include "rforge/form.hpp"

#include <sstream>

namespace rforge {

int sort_wedge_word(std::vector<Diff>& word) {
    // Insertion sort counting transpositions; detects repeats.
    int sign = 1;
    for (std::size_t i = 1; i < word.size(); ++i) {
        for (std::size_t j = i; j > 0 && word[j] < word[j - 1]; --j) {
            std::swap(word[j], word[j - 1]);
            sign = -sign;
        }
    }
    for (std::size_t i = 1; i < word.size(); ++i)
        if (word[i] == word[i - 1]) return 0;
    return sign;
}

Form Form::scalar(int arity, BiPoly coeff) {
    Form f(arity);
    f.add_component({}, {}, coeff);
    return f;
}

Form Form::differential(int arity, int var, bool anti) {
    Form f(arity);
    IndexSet h, a;
    (anti ? a : h).push_back(var);
    f.add_component(h, a, BiPoly::constant(arity, Scalar(1)));
    return f;
}

Form Form::basis(int arity, IndexSet holo, IndexSet anti, BiPoly coeff) {
    // Normalizes unsorted index lists, folding the Koszul sign into the coefficient.
    std::vector<Diff> word;
    for (int i : holo) word.push_back({i, false});
    for (int j : anti) word.push_back({j, true});
    int sign = sort_wedge_word(word);
    Form f(arity);
    if (sign == 0 || coeff.is_zero()) return f;
    IndexSet h, a;
    for (const Diff& d : word) (d.anti ? a : h).push_back(d.var);
    if (sign < 0) coeff *= Scalar(-1);
    f.add_component(h, a, coeff);
    return f;
}

void Form::add_component(const IndexSet& holo, const IndexSet& anti, const BiPoly& coeff) {
    if (coeff.is_zero()) return;
    auto key = std::make_pair(holo, anti);
    auto it = comps_.find(key);
    if (it == comps_.end()) {
        comps_.emplace(std::move(key), coeff);
    } else {
        it->second += coeff;
        if (it->second.is_zero()) comps_.erase(it);
    }
}

Form Form::operator-() const {
    Form f(arity_);
    for (const auto& [k, c] : comps_) f.comps_.emplace(k, -c);
    return f;
}

Form& Form::operator+=(const Form& o) {
    if (comps_.empty()) arity_ = o.arity_;
    if (o.arity_ != arity_ && !o.comps_.empty()) throw argument_error("Form arity mismatch");
    for (const auto& [k, c] : o.comps_) add_component(k.first, k.second, c);
    return *this;
}

Form operator*(const Form& f, const BiPoly& p) {
    Form out(f.arity_);
    for (const auto& [k, c] : f.comps_) out.add_component(k.first, k.second, c * p);
    return out;
}

Form operator*(const Form& f, const Scalar& s) {
    Form out(f.arity_);
    for (const auto& [k, c] : f.comps_) out.add_component(k.first, k.second, c * s);
    return out;
}

Form wedge(const Form& a, const Form& b) {
    if (a.arity_ != b.arity_ && !a.comps_.empty() && !b.comps_.empty())
        throw argument_error("Form arity mismatch in wedge");
    Form out(a.comps_.empty() ? b.arity_ : a.arity_);
    for (const auto& [ka, ca] : a.comps_)
        for (const auto& [kb, cb] : b.comps_) {
            std::vector<Diff> word;
            for (int i : ka.first) word.push_back({i, false});
            for (int j : ka.second) word.push_back({j, true});
            for (int i : kb.first) word.push_back({i, false});
            for (int j : kb.second) word.push_back({j, true});
            int sign = sort_wedge_word(word);
            if (sign == 0) continue;
            IndexSet h, an;
            for (const Diff& d : word) (d.anti ? an : h).push_back(d.var);
            BiPoly c = ca * cb;
            if (sign < 0) c *= Scalar(-1);
            out.add_component(h, an, c);
        }
    return out;
}

Form Form::d_holo() const {
    // d(c dt_I ^ ~dt_J) = sum_v (dc/dt_v) dt_v ^ dt_I ^ ~dt_J, dt_v prepended.
    Form out(arity_);
    for (const auto& [k, c] : comps_)
        for (int v = 1; v <= arity_; ++v) {
            BiPoly dc = c.wirtinger_derive(v, false);
            if (dc.is_zero()) continue;
            std::vector<Diff> word;
            word.push_back({v, false});
            for (int i : k.first) word.push_back({i, false});
            for (int j : k.second) word.push_back({j, true});
            int sign = sort_wedge_word(word);
            if (sign == 0) continue;
            IndexSet h, a;
            for (const Diff& d : word) (d.anti ? a : h).push_back(d.var);
            if (sign < 0) dc *= Scalar(-1);
            out.add_component(h, a, dc);
        }
    return out;
}

Form Form::d_anti() const {
    Form out(arity_);
    for (const auto& [k, c] : comps_)
        for (int v = 1; v <= arity_; ++v) {
            BiPoly dc = c.wirtinger_derive(v, true);
            if (dc.is_zero()) continue;
            std::vector<Diff> word;
            word.push_back({v, true});
            for (int i : k.first) word.push_back({i, false});
            for (int j : k.second) word.push_back({j, true});
            int sign = sort_wedge_word(word);
            if (sign == 0) continue;
            IndexSet h, a;
            for (const Diff& d : word) (d.anti ? a : h).push_back(d.var);
            if (sign < 0) dc *= Scalar(-1);
            out.add_component(h, a, dc);
        }
    return out;
}

std::string Form::str(const std::string& var_prefix) const {
    if (comps_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : comps_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str(var_prefix) << ")";
        for (int i : k.first) os << "^d" << var_prefix << i;
        for (int j : k.second) os << "^~d" << var_prefix << j;
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Form& f) { return os << f.str(); }

}  // namespace rforge

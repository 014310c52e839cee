#include "rforge/bipoly.hpp"

#include <cctype>
#include <sstream>

namespace rforge {

BiPoly BiPoly::constant(int arity, Scalar c) {
    BiPoly p(arity);
    p.add_term({p.zero_md(), p.zero_md()}, c);
    return p;
}

BiPoly BiPoly::variable(int arity, int var_index, bool conjugate, int power) {
    if (var_index < 1 || var_index > arity) throw argument_error("variable index out of range");
    BiPoly p(arity);
    Multidegree h(arity, 0), a(arity, 0);
    (conjugate ? a : h)[var_index - 1] = power;
    p.add_term({std::move(h), std::move(a)}, Scalar(1));
    return p;
}

BiPoly BiPoly::monomial(int arity, Multidegree holo, Multidegree anti, Scalar c) {
    BiPoly p(arity);
    p.add_term({std::move(holo), std::move(anti)}, c);
    return p;
}

bool BiPoly::is_holomorphic() const {
    for (const auto& [k, c] : terms_)
        if (degree_sum(k.anti) != 0) return false;
    return true;
}

Scalar BiPoly::constant_term() const {
    auto it = terms_.find({zero_md(), zero_md()});
    return it == terms_.end() ? Scalar() : it->second;
}

int BiPoly::total_degree() const {
    int d = 0;
    for (const auto& [k, c] : terms_) d = std::max(d, degree_sum(k.holo) + degree_sum(k.anti));
    return d;
}

int BiPoly::degree_in(int var_index, bool conjugate) const {
    int d = 0;
    for (const auto& [k, c] : terms_)
        d = std::max<int>(d, (conjugate ? k.anti : k.holo)[var_index - 1]);
    return d;
}

void BiPoly::add_term(const MonoKey& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

BiPoly BiPoly::operator-() const {
    BiPoly p(arity_);
    for (const auto& [k, c] : terms_) p.terms_.emplace(k, -c);
    return p;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
    if (arity_ == 0 && terms_.empty()) arity_ = o.arity_;
    if (o.arity_ != arity_ && !o.terms_.empty()) throw argument_error("BiPoly arity mismatch");
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) { return *this += -o; }

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    if (a.arity_ != b.arity_) throw argument_error("BiPoly arity mismatch");
    BiPoly p(a.arity_);
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) {
            MonoKey k;
            k.holo.resize(a.arity_);
            k.anti.resize(a.arity_);
            for (int i = 0; i < a.arity_; ++i) {
                k.holo[i] = ka.holo[i] + kb.holo[i];
                k.anti[i] = ka.anti[i] + kb.anti[i];
            }
            p.add_term(k, ca * cb);
        }
    return p;
}

BiPoly& BiPoly::operator*=(const Scalar& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
}

bool operator<(const BiPoly& a, const BiPoly& b) {
    if (a.arity_ != b.arity_) return a.arity_ < b.arity_;
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
        if (ia->first < ib->first) return true;
        if (ib->first < ia->first) return false;
        if (ia->second.coef < ib->second.coef) return true;
        if (ib->second.coef < ia->second.coef) return false;
        if (ia->second.tau_power != ib->second.tau_power)
            return ia->second.tau_power < ib->second.tau_power;
    }
    return ia == a.terms_.end() && ib != b.terms_.end();
}

BiPoly BiPoly::pow(int e) const {
    if (e < 0) throw argument_error("negative polynomial power");
    BiPoly r = BiPoly::constant(arity_, Scalar(1));
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
}

BiPoly BiPoly::wirtinger_derive(int var_index, bool conjugate) const {
    if (var_index < 1 || var_index > arity_) throw argument_error("variable index out of range");
    BiPoly p(arity_);
    for (const auto& [k, c] : terms_) {
        const Multidegree& side = conjugate ? k.anti : k.holo;
        int e = side[var_index - 1];
        if (e == 0) continue;
        MonoKey nk = k;
        (conjugate ? nk.anti : nk.holo)[var_index - 1] = e - 1;
        p.add_term(nk, c * Scalar(GaussianRational(e)));
    }
    return p;
}

BiPoly BiPoly::conj() const {
    BiPoly p(arity_);
    for (const auto& [k, c] : terms_) p.add_term({k.anti, k.holo}, c.conj());
    return p;
}

BiPoly BiPoly::substitute(const std::vector<BiPoly>& subs) const {
    if ((int)subs.size() != arity_) throw argument_error("substitution arity mismatch");
    int new_arity = subs.empty() ? 0 : subs.front().arity();
    BiPoly out(new_arity);
    for (const auto& [k, c] : terms_) {
        BiPoly term = BiPoly::constant(new_arity, c);
        for (int i = 0; i < arity_; ++i) {
            if (k.holo[i]) term = term * subs[i].pow(k.holo[i]);
            if (k.anti[i]) term = term * subs[i].conj().pow(k.anti[i]);
        }
        out += term;
    }
    return out;
}

BiPoly BiPoly::substitute_monomial(const std::vector<std::vector<int>>& expo, int new_arity) const {
    if ((int)expo.size() != arity_) throw argument_error("substitution arity mismatch");
    BiPoly out(new_arity);
    for (const auto& [k, c] : terms_) {
        Multidegree h(new_arity, 0), a(new_arity, 0);
        for (int i = 0; i < arity_; ++i)
            for (int j = 0; j < new_arity; ++j) {
                h[j] += k.holo[i] * expo[i][j];
                a[j] += k.anti[i] * expo[i][j];
            }
        for (int j = 0; j < new_arity; ++j)
            if (h[j] < 0 || a[j] < 0) throw argument_error("monomial substitution gives negative exponent");
        out.add_term({std::move(h), std::move(a)}, c);
    }
    return out;
}

BiPoly BiPoly::drop_anti(int var_index) const {
    BiPoly p(arity_);
    for (const auto& [k, c] : terms_)
        if (k.anti[var_index - 1] == 0) p.add_term(k, c);
    return p;
}

Scalar BiPoly::evaluate(const std::vector<GaussianRational>& point) const {
    if ((int)point.size() != arity_) throw argument_error("evaluation point arity mismatch");
    Scalar acc;
    for (const auto& [k, c] : terms_) {
        GaussianRational v(1);
        for (int i = 0; i < arity_; ++i) {
            for (int e = 0; e < k.holo[i]; ++e) v *= point[i];
            for (int e = 0; e < k.anti[i]; ++e) v *= point[i].conj();
        }
        acc += Scalar(v, 0) * c;
    }
    return acc;
}

BiPoly BiPoly::evaluate_var(int var_index, const GaussianRational& value) const {
    BiPoly p(arity_);
    for (const auto& [k, c] : terms_) {
        GaussianRational v(1);
        for (int e = 0; e < k.holo[var_index - 1]; ++e) v *= value;
        for (int e = 0; e < k.anti[var_index - 1]; ++e) v *= value.conj();
        MonoKey nk = k;
        nk.holo[var_index - 1] = 0;
        nk.anti[var_index - 1] = 0;
        p.add_term(nk, c * Scalar(v));
    }
    return p;
}

BiPoly BiPoly::shift(const std::vector<GaussianRational>& point) const {
    std::vector<BiPoly> subs;
    subs.reserve(arity_);
    for (int i = 1; i <= arity_; ++i)
        subs.push_back(BiPoly::variable(arity_, i) + BiPoly::constant(arity_, Scalar(point[i - 1])));
    return substitute(subs);
}

BiPoly BiPoly::divide_monomial(int var_index, int e) const {
    BiPoly p(arity_);
    for (const auto& [k, c] : terms_) {
        if (k.holo[var_index - 1] < e) throw argument_error("not divisible by monomial");
        MonoKey nk = k;
        nk.holo[var_index - 1] -= e;
        p.add_term(nk, c);
    }
    return p;
}

Multidegree BiPoly::holo_content() const {
    if (terms_.empty()) return zero_md();
    Multidegree m(arity_, INT32_MAX);
    for (const auto& [k, c] : terms_)
        for (int i = 0; i < arity_; ++i) m[i] = std::min(m[i], k.holo[i]);
    return m;
}

std::string BiPoly::str(const std::string& var_prefix) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.str();
        for (int i = 0; i < arity_; ++i) {
            if (k.holo[i]) {
                os << "*" << var_prefix << (i + 1);
                if (k.holo[i] > 1) os << "^" << k.holo[i];
            }
            if (k.anti[i]) {
                os << "*~" << var_prefix << (i + 1);
                if (k.anti[i] > 1) os << "^" << k.anti[i];
            }
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const BiPoly& p) { return os << p.str(); }

namespace {

// Tiny recursive-descent parser for the polynomial grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*  with implicit '*' before variables
//   factor := scalar | rational | var('^' int)? | '(' expr ')' | '-' factor
//   var    := '~'? prefix digits
struct PolyParser {
    const std::string& s;
    std::size_t pos = 0;
    int arity;
    std::string prefix;

    explicit PolyParser(const std::string& text, int k, std::string p)
        : s(text), arity(k), prefix(std::move(p)) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw argument_error("polynomial parse error at column " + std::to_string(pos + 1) + ": " + msg);
    }

    BiPoly parse_expr() {
        BiPoly acc = parse_term();
        while (true) {
            skip_ws();
            if (eat('+'))
                acc += parse_term();
            else if (peek() == '-')
                acc += parse_term();  // the sign is consumed by the term itself
            else
                break;
        }
        return acc;
    }

    BiPoly parse_term() {
        BiPoly acc = parse_factor();
        while (true) {
            skip_ws();
            if (eat('*')) {
                acc = acc * parse_factor();
            } else {
                char c = peek();
                if (c == '~' || c == '(' || (!prefix.empty() && c == prefix[0]))
                    acc = acc * parse_factor();
                else
                    break;
            }
        }
        return acc;
    }

    int parse_int() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        if (pos == start) fail("expected integer");
        return std::stoi(s.substr(start, pos - start));
    }

    BiPoly parse_factor() {
        skip_ws();
        if (eat('-')) return -parse_factor();
        if (eat('(')) {
            BiPoly inner = parse_expr();
            if (!eat(')')) fail("expected ')'");
            BiPoly acc = maybe_pow(inner);
            return acc;
        }
        char c = peek();
        bool conj = false;
        if (c == '~') {
            ++pos;
            conj = true;
            skip_ws();
            c = peek();
        }
        if (!prefix.empty() && s.compare(pos, prefix.size(), prefix) == 0 &&
            pos + prefix.size() < s.size() && std::isdigit((unsigned char)s[pos + prefix.size()])) {
            pos += prefix.size();
            int idx = parse_int();
            int e = 1;
            if (eat('^')) e = parse_int();
            if (idx < 1 || idx > arity) fail("variable index out of range");
            return BiPoly::variable(arity, idx, conj, e);
        }
        if (conj) fail("expected variable after '~'");
        if (c == 'i' && (pos + 1 >= s.size() || !std::isalnum((unsigned char)s[pos + 1]))) {
            ++pos;
            return BiPoly::constant(arity, Scalar(GaussianRational::i()));
        }
        if (s.compare(pos, 3, "tau") == 0) {
            pos += 3;
            int e = 1;
            if (eat('^')) e = parse_int();
            return BiPoly::constant(arity, Scalar::tau(e));
        }
        if (std::isdigit((unsigned char)c)) {
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
            std::string num = s.substr(start, pos - start);
            if (eat('/')) {
                skip_ws();
                std::size_t d0 = pos;
                while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
                if (d0 == pos) fail("expected denominator");
                num += "/" + s.substr(d0, pos - d0);
            }
            BiPoly base = BiPoly::constant(arity, Scalar(rat_from_string(num)));
            return maybe_pow(base);
        }
        fail("unexpected character");
    }

    BiPoly maybe_pow(BiPoly base) {
        if (eat('^')) {
            int e = parse_int();
            return base.pow(e);
        }
        return base;
    }
};

}  // namespace

BiPoly bipoly_from_string(const std::string& text, int arity, const std::string& var_prefix) {
    PolyParser p(text, arity, var_prefix);
    BiPoly out = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    if (out.is_zero()) return BiPoly(arity);
    return out;
}

}  // namespace rforge

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace rforge {

/// Thrown on contract violations of the exact layer (bad arguments,
/// unrepresentable operations).  Carries a plain-text reason.
class argument_error : public std::runtime_error {
public:
    explicit argument_error(const std::string& what) : std::runtime_error(what) {}
};

class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational rat_from_string(const std::string& s) {
    std::string body = s;
    if (!body.empty() && body.front() == '+') body.erase(body.begin());
    Rational q;
    if (q.set_str(body, 10) != 0) throw argument_error("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

/// Exact element of Q(i).
struct GaussianRational {
    Rational re, im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(long n) : re(n), im(0) {}
    GaussianRational(Rational r) : re(std::move(r)), im(0) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational conj() const { return {re, -im}; }

    /// |z|^2 as an exact rational.
    Rational norm2() const { return re * re + im * im; }

    GaussianRational operator-() const { return {-re, -im}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = r;
        im = i;
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) throw argument_error("division by zero in Q(i)");
        Rational n2 = o.norm2();
        Rational r = (re * o.re + im * o.im) / n2;
        Rational i = (im * o.re - re * o.im) / n2;
        re = r;
        im = i;
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
    friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    }

    double re_double() const { return re.get_d(); }
    double im_double() const { return im.get_d(); }

    std::string str() const;
};

std::string rational_str(const Rational& q);
GaussianRational gaussian_from_string(const std::string& s);
std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

/// A Gaussian rational times an integer power of the formal constant tau = 2*pi*i.
/// Keeping tau formal keeps every pairing value exact.
struct Scalar {
    GaussianRational coef;
    int tau_power = 0;

    Scalar() = default;
    Scalar(long n) : coef(n) {}
    Scalar(GaussianRational c, int tau = 0) : coef(std::move(c)), tau_power(tau) {}

    static Scalar tau(int power = 1) { return Scalar(GaussianRational(1), power); }

    bool is_zero() const { return coef.is_zero(); }

    /// conj(tau) = -tau, so conjugation flips the sign on odd tau powers.
    Scalar conj() const {
        GaussianRational c = coef.conj();
        if (tau_power % 2 != 0) c = -c;
        return {c, tau_power};
    }

    Scalar operator-() const { return {-coef, tau_power}; }

    Scalar& operator*=(const Scalar& o) {
        coef *= o.coef;
        tau_power += o.tau_power;
        if (coef.is_zero()) tau_power = 0;
        return *this;
    }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }

    /// Addition is defined only on matching tau powers; mixed sums belong in
    /// ScalarSum.
    Scalar& operator+=(const Scalar& o) {
        if (o.is_zero()) return *this;
        if (is_zero()) {
            *this = o;
            return *this;
        }
        if (tau_power != o.tau_power)
            throw argument_error("Scalar addition with mismatched tau powers; use ScalarSum");
        coef += o.coef;
        if (coef.is_zero()) tau_power = 0;
        return *this;
    }
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.is_zero() && b.is_zero()) return true;
        return a.coef == b.coef && a.tau_power == b.tau_power;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    std::string str() const;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);
Scalar scalar_from_string(const std::string& s);

/// Finite formal sum over tau powers: map tau_power -> Gaussian rational.
/// This is where mixed-normalization pairing values live.
class ScalarSum {
public:
    ScalarSum() = default;
    ScalarSum(const Scalar& s) { add(s); }

    void add(const Scalar& s) {
        if (s.is_zero()) return;
        auto it = parts_.find(s.tau_power);
        if (it == parts_.end()) {
            parts_.emplace(s.tau_power, s.coef);
        } else {
            it->second += s.coef;
            if (it->second.is_zero()) parts_.erase(it);
        }
    }

    ScalarSum& operator+=(const ScalarSum& o) {
        for (const auto& [p, c] : o.parts_) add(Scalar(c, p));
        return *this;
    }
    friend ScalarSum operator+(ScalarSum a, const ScalarSum& b) { return a += b; }

    ScalarSum operator-() const {
        ScalarSum r;
        for (const auto& [p, c] : parts_) r.parts_.emplace(p, -c);
        return r;
    }
    ScalarSum& operator-=(const ScalarSum& o) { return *this += -o; }
    friend ScalarSum operator-(ScalarSum a, const ScalarSum& b) { return a -= b; }

    ScalarSum& operator*=(const Scalar& s) {
        std::map<int, GaussianRational> out;
        if (!s.is_zero())
            for (const auto& [p, c] : parts_) out.emplace(p + s.tau_power, c * s.coef);
        parts_ = std::move(out);
        return *this;
    }
    friend ScalarSum operator*(ScalarSum a, const Scalar& b) { return a *= b; }

    bool is_zero() const { return parts_.empty(); }

    const std::map<int, GaussianRational>& parts() const { return parts_; }

    friend bool operator==(const ScalarSum& a, const ScalarSum& b) { return a.parts_ == b.parts_; }
    friend bool operator!=(const ScalarSum& a, const ScalarSum& b) { return !(a == b); }

    /// Numeric value with tau = 2*pi*i, as (re, im).
    std::pair<double, double> to_complex() const;

    std::string str() const;

private:
    std::map<int, GaussianRational> parts_;
};

std::ostream& operator<<(std::ostream& os, const ScalarSum& s);

}  // namespace rforge

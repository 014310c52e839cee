#include "rforge/numbers.hpp"

#include <cmath>
#include <complex>

namespace rforge {

std::string rational_str(const Rational& q) { return q.get_str(); }

std::string GaussianRational::str() const {
    // Canonical text form: "a", "a+b*i", "a-b*i", or "b*i"; round-trips exactly.
    if (im == 0) return re.get_str();
    std::ostringstream os;
    if (re != 0) {
        os << re.get_str();
        if (im > 0) os << "+";
    }
    if (im == -1)
        os << "-";
    else if (im != 1)
        os << im.get_str() << "*";
    os << "i";
    return os.str();
}

GaussianRational gaussian_from_string(const std::string& s) {
    // Accepts the forms produced by str().
    if (s.empty()) throw argument_error("empty Gaussian rational literal");
    std::string t = s;
    auto parse_im = [](const std::string& body) -> Rational {
        if (body.empty() || body == "+") return Rational(1);
        if (body == "-") return Rational(-1);
        std::string num = body;
        if (!num.empty() && num.back() == '*') num.pop_back();
        return rat_from_string(num);
    };
    if (t.back() == 'i') {
        t.pop_back();
        // Find the split between the real part and the imaginary coefficient:
        // scan for the last top-level '+' or '-' that is not part of an exponent
        // or the leading sign.
        std::size_t split = std::string::npos;
        for (std::size_t k = t.size(); k-- > 1;) {
            if ((t[k] == '+' || t[k] == '-') && t[k - 1] != '/' && t[k - 1] != '+' && t[k - 1] != '-') {
                split = k;
                break;
            }
        }
        if (split == std::string::npos) return {Rational(0), parse_im(t)};
        std::string re_part = t.substr(0, split);
        std::string im_part = t.substr(split);
        if (im_part.size() == 1)
            return {rat_from_string(re_part), im_part[0] == '-' ? Rational(-1) : Rational(1)};
        return {rat_from_string(re_part), parse_im(im_part)};
    }
    return {rat_from_string(t), Rational(0)};
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.str(); }

std::string Scalar::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    os << "(" << coef.str() << ")";
    if (tau_power != 0) os << "*tau^" << tau_power;
    return os.str();
}

Scalar scalar_from_string(const std::string& s) {
    if (s == "0") return Scalar();
    auto open = s.find('(');
    auto close = s.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw argument_error("bad scalar literal: " + s);
    GaussianRational c = gaussian_from_string(s.substr(open + 1, close - open - 1));
    int tau = 0;
    auto caret = s.find("*tau^", close);
    if (caret != std::string::npos) tau = std::stoi(s.substr(caret + 5));
    return Scalar(c, tau);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

std::pair<double, double> ScalarSum::to_complex() const {
    std::complex<double> tau(0.0, 2.0 * M_PI);
    std::complex<double> acc(0.0, 0.0);
    for (const auto& [p, c] : parts_) {
        std::complex<double> z(c.re_double(), c.im_double());
        acc += z * std::pow(tau, p);
    }
    return {acc.real(), acc.imag()};
}

std::string ScalarSum::str() const {
    if (parts_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, c] : parts_) {
        if (!first) os << " + ";
        first = false;
        os << Scalar(c, p).str();
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const ScalarSum& s) { return os << s.str(); }

}  // namespace rforge

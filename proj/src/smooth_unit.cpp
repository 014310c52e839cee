#include "rforge/smooth_unit.hpp"

#include <sstream>

namespace rforge {

SmoothUnit::SmoothUnit(BiPoly num, BiPoly den, std::vector<GaussianRational> base_point)
    : num_(std::move(num)), den_(std::move(den)), base_(std::move(base_point)) {
    if (!num_.is_holomorphic() || !den_.is_holomorphic())
        throw argument_error("SmoothUnit parts must be holomorphic");
    if (den_.evaluate(base_).is_zero())
        throw argument_error("SmoothUnit denominator vanishes at base point");
}

SmoothUnit SmoothUnit::one(int arity) {
    BiPoly c = BiPoly::constant(arity, Scalar(1));
    return SmoothUnit(c, c, std::vector<GaussianRational>(arity));
}

bool SmoothUnit::is_one() const { return num_ == den_; }

SmoothUnit SmoothUnit::reciprocal() const { return SmoothUnit(den_, num_, base_); }

SmoothUnit SmoothUnit::times(const SmoothUnit& o) const {
    if (base_ != o.base_) throw argument_error("SmoothUnit base point mismatch");
    return SmoothUnit(num_ * o.num_, den_ * o.den_, base_);
}

Scalar SmoothUnit::value_at_base() const {
    Scalar n = num_.evaluate(base_);
    Scalar d = den_.evaluate(base_);
    return Scalar(n.coef / d.coef, n.tau_power - d.tau_power);
}

void SmoothUnit::canonicalize() {
    Scalar d = den_.evaluate(base_);
    if (d.tau_power != 0) throw argument_error("tau in unit denominator");
    GaussianRational inv = GaussianRational(1) / d.coef;
    den_ *= Scalar(inv);
    num_ *= Scalar(inv);
}

bool operator<(const SmoothUnit& a, const SmoothUnit& b) {
    if (a.num_ != b.num_) return a.num_ < b.num_;
    if (a.den_ != b.den_) return a.den_ < b.den_;
    return a.base_ < b.base_;
}

std::string SmoothUnit::str(const std::string& var_prefix) const {
    std::ostringstream os;
    os << "(" << num_.str(var_prefix) << ")/(" << den_.str(var_prefix) << ")";
    return os.str();
}

}  // namespace rforge

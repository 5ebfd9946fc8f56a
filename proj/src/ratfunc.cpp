#include "plift/ratfunc.hpp"

namespace plift {

RatFunc::RatFunc(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.chart(), Scalar(1))) {}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    num_.check_same_chart(den_);
    normalize();
}

void RatFunc::normalize() {
    if (den_.is_zero()) throw arithmetic_error("rational function with zero denominator");
    if (num_.is_zero()) {
        den_ = Poly::constant(num_.chart(), Scalar(1));
        return;
    }
    if (!den_.is_constant()) {
        Poly g = poly_gcd(num_, den_);
        if (!g.is_constant() || g.constant_value() != 1) {
            num_ = divide_exact(num_, g);
            den_ = divide_exact(den_, g);
        }
    }
    Scalar c = den_.scalar_content();
    if (c != 1) {
        den_ = den_.divide_by_scalar(c);
        num_ = num_.divide_by_scalar(c);
    }
}

bool RatFunc::is_one() const {
    return den_.is_constant() && num_.is_constant() && !num_.is_zero() && num_.constant_value() == 1;
}

RatFunc RatFunc::operator-() const {
    RatFunc r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

namespace {

// a/da (+|-) b/db over the lcm of the denominators, which keeps chained sums
// from accumulating redundant denominator factors.
RatFunc add_sub(const RatFunc& a, const RatFunc& b, bool subtract) {
    const Poly& da = a.den();
    const Poly& db = b.den();
    if (da == db) {
        Poly num = subtract ? a.num() - b.num() : a.num() + b.num();
        return RatFunc(std::move(num), da);
    }
    Poly g = poly_gcd(da, db);
    if (g.is_constant()) {
        Poly num = subtract ? a.num() * db - b.num() * da : a.num() * db + b.num() * da;
        return RatFunc(std::move(num), da * db);
    }
    Poly da_red = divide_exact(da, g);
    Poly db_red = divide_exact(db, g);
    Poly num = subtract ? a.num() * db_red - b.num() * da_red : a.num() * db_red + b.num() * da_red;
    return RatFunc(std::move(num), da * db_red);
}

} // namespace

RatFunc operator+(const RatFunc& a, const RatFunc& b) { return add_sub(a, b, false); }

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return add_sub(a, b, true); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.den_.is_constant() && b.den_.is_constant()) return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    // Cross-cancel before multiplying so the final gcd runs on small inputs.
    Poly g1 = poly_gcd(a.num_, b.den_);
    Poly g2 = poly_gcd(b.num_, a.den_);
    Poly num = divide_exact(a.num_, g1) * divide_exact(b.num_, g2);
    Poly den = divide_exact(a.den_, g2) * divide_exact(b.den_, g1);
    return RatFunc(std::move(num), std::move(den));
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw arithmetic_error("division by zero rational function");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc RatFunc::operator*(const Scalar& c) const {
    RatFunc r;
    Poly n = num_;
    n *= c;
    r.num_ = std::move(n);
    r.den_ = den_;
    if (r.num_.is_zero()) r.den_ = Poly::constant(num_.chart(), Scalar(1));
    return r;
}

RatFunc RatFunc::derivative(int var) const {
    if (var < 0 || var >= chart()->arity()) throw structural_error("unknown variable index in derivative");
    // Quotient rule; normalization reduces the square when possible.
    return RatFunc(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

RatFunc RatFunc::pow(uint32_t k) const {
    RatFunc r;
    r.num_ = num_.pow(k);
    r.den_ = den_.pow(k);
    return r;
}

RatFunc RatFunc::on_chart(const ChartPtr& target, const std::vector<int>& slot_map) const {
    RatFunc r;
    r.num_ = num_.on_chart(target, slot_map);
    r.den_ = den_.on_chart(target, slot_map);
    return r;
}

RatFunc RatFunc::lift_to_tangent() const {
    RatFunc r;
    r.num_ = num_.lift_to_tangent();
    r.den_ = den_.lift_to_tangent();
    return r;
}

RatFunc RatFunc::drop_to_base() const {
    RatFunc r;
    r.num_ = num_.drop_to_base();
    r.den_ = den_.drop_to_base();
    return r;
}

std::string RatFunc::str() const {
    if (is_polynomial()) {
        if (den_.constant_value() == 1) return num_.str();
        // Non-unit constant denominator folds into the coefficients.
        return num_.divide_by_scalar(den_.constant_value()).str();
    }
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

} // namespace plift

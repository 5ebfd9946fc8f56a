#ifndef PLIFT_RATFUNC_HPP
#define PLIFT_RATFUNC_HPP

#include <string>

#include "plift/poly.hpp"

namespace plift {

// Rational function in canonical form: gcd(num, den) = 1, den primitive with
// integer coefficients and positive leading coefficient. Two RatFuncs are
// equal as rational functions iff their representations are equal.
class RatFunc {
public:
    RatFunc() = default;
    explicit RatFunc(Poly num);
    RatFunc(Poly num, Poly den);
    RatFunc(ChartPtr chart, const Scalar& c) : RatFunc(Poly::constant(chart, c)) {}

    static RatFunc zero(ChartPtr chart) { return RatFunc(Poly::zero(std::move(chart))); }
    static RatFunc one(ChartPtr chart) { return RatFunc(Poly::constant(std::move(chart), Scalar(1))); }
    static RatFunc variable(ChartPtr chart, int var) { return RatFunc(Poly::variable(std::move(chart), var)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const ChartPtr& chart() const { return num_.chart(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    bool is_polynomial() const { return den_.is_constant(); }

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    RatFunc operator*(const Scalar& c) const;
    friend RatFunc operator*(const Scalar& c, const RatFunc& r) { return r * c; }

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    RatFunc derivative(int var) const;
    RatFunc pow(uint32_t k) const;

    RatFunc on_chart(const ChartPtr& target, const std::vector<int>& slot_map) const;
    RatFunc lift_to_tangent() const;
    RatFunc drop_to_base() const;
    bool depends_on(int var) const { return num_.depends_on(var) || den_.depends_on(var); }

    std::string str() const;

private:
    void normalize();

    Poly num_, den_;
};

} // namespace plift

#endif

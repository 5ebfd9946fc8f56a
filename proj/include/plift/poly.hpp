#ifndef PLIFT_POLY_HPP
#define PLIFT_POLY_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "plift/chart.hpp"
#include "plift/scalar.hpp"

namespace plift {

// Dense exponent vector, one slot per chart variable.
using Exponents = std::vector<uint32_t>;

inline uint32_t total_degree(const Exponents& e) {
    uint32_t d = 0;
    for (uint32_t x : e) d += x;
    return d;
}

// Graded lexicographic order over the chart's declared variable order.
struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        uint32_t da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        // Same degree: earlier variables weigh more.
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

// Sparse multivariate polynomial over Scalar, in canonical form: no zero
// coefficients, every key has exactly chart-arity slots.
class Poly {
public:
    using TermMap = std::map<Exponents, Scalar, GrlexLess>;

    Poly() = default; // zero polynomial on a null chart; usable only as a placeholder
    explicit Poly(ChartPtr chart) : chart_(std::move(chart)) {}
    Poly(ChartPtr chart, const Scalar& c);

    static Poly zero(ChartPtr chart) { return Poly(std::move(chart)); }
    static Poly constant(ChartPtr chart, const Scalar& c) { return Poly(std::move(chart), c); }
    static Poly variable(ChartPtr chart, int var, uint32_t power = 1);

    const ChartPtr& chart() const { return chart_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Constant value; requires is_constant().
    Scalar constant_value() const;

    // Leading monomial data under the grlex order; requires nonzero.
    const Exponents& leading_exponents() const;
    const Scalar& leading_coefficient() const;

    uint32_t degree() const; // total degree, 0 for the zero polynomial
    uint32_t degree_in(int var) const;
    bool depends_on(int var) const { return degree_in(var) > 0; }

    void add_term(const Exponents& e, const Scalar& c); // accumulating, keeps canonical form

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly& operator*=(const Scalar& c);
    friend Poly operator*(Poly a, const Scalar& c) { return a *= c; }
    friend Poly operator*(const Scalar& c, Poly a) { return a *= c; }

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly pow(uint32_t k) const;
    Poly derivative(int var) const;

    // Coefficient of var^k viewed as a univariate polynomial in var; the
    // result does not depend on var.
    Poly coefficient_of(int var, uint32_t k) const;

    // Rewrites the polynomial on another chart. `slot_map[i]` is the target
    // slot of source variable i. Fails if a dropped slot is in use.
    Poly on_chart(const ChartPtr& target, const std::vector<int>& slot_map) const;
    // Base chart -> its tangent chart (x-slots keep their positions).
    Poly lift_to_tangent() const;
    // Tangent chart -> base chart; requires no fiber-variable dependence.
    Poly drop_to_base() const;

    std::string str() const;

    // Scalar content: the rational c with sign of the leading coefficient such
    // that (*this)/c has coprime integer coefficients and positive leading
    // coefficient. Zero polynomial -> 1.
    Scalar scalar_content() const;
    Poly divide_by_scalar(const Scalar& c) const;
    // this/c with integer coprime coefficients, positive leading coefficient.
    Poly primitive_part() const;

    void check_same_chart(const Poly& o) const;

private:
    ChartPtr chart_;
    TermMap terms_;
};

// Exact division: requires b | a; throws arithmetic_error otherwise.
Poly divide_exact(const Poly& a, const Poly& b);

// Canonical gcd (primitive, positive leading coefficient). gcd(0,0) = 0.
Poly poly_gcd(const Poly& a, const Poly& b);

namespace kernels {
// Serial reference and OpenMP term-map products; both produce identical maps.
Poly::TermMap mul_terms_serial(const Poly::TermMap& a, const Poly::TermMap& b);
Poly::TermMap mul_terms_parallel(const Poly::TermMap& a, const Poly::TermMap& b);
} // namespace kernels

} // namespace plift

#endif

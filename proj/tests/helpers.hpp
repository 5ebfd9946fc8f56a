#ifndef PLIFT_TEST_HELPERS_HPP
#define PLIFT_TEST_HELPERS_HPP

#include "plift/connections.hpp"
#include "plift/rng.hpp"
#include "plift/tensors.hpp"

namespace plift::testing {

inline ChartPtr chart2() {
    static ChartPtr c = Chart::make_base("M2", {"x1", "x2"});
    return c;
}

inline ChartPtr chart3() {
    static ChartPtr c = Chart::make_base("M3", {"x1", "x2", "x3"});
    return c;
}

// Sparse random polynomial of total degree <= deg with small coefficients.
inline Poly random_poly(const ChartPtr& chart, Rng& rng, uint32_t deg = 2, int terms = 3) {
    Poly p(chart);
    for (int t = 0; t < terms; ++t) {
        Exponents e(static_cast<size_t>(chart->arity()), 0u);
        uint32_t left = deg;
        for (int i = 0; i < chart->arity() && left > 0; ++i) {
            uint32_t k = static_cast<uint32_t>(rng.below(left + 1));
            e[static_cast<size_t>(i)] = k;
            left -= k;
        }
        long c = rng.range(-3, 3);
        if (c != 0) p.add_term(e, Scalar(c));
    }
    return p;
}

inline Poly random_nonzero_poly(const ChartPtr& chart, Rng& rng, uint32_t deg = 2, int terms = 3) {
    for (;;) {
        Poly p = random_poly(chart, rng, deg, terms);
        if (!p.is_zero()) return p;
    }
}

inline RatFunc random_ratfunc(const ChartPtr& chart, Rng& rng, uint32_t deg = 2) {
    Poly num = random_poly(chart, rng, deg);
    Poly den = random_nonzero_poly(chart, rng, 1, 2);
    return RatFunc(num, den);
}

inline Multivector random_multivector(const ChartPtr& chart, int degree, Rng& rng, uint32_t deg = 2) {
    Multivector m(chart, degree);
    for (const auto& t : increasing_tuples(chart->arity(), degree)) {
        if (rng.below(3) == 0) continue;
        Poly p = random_poly(chart, rng, deg);
        if (!p.is_zero()) m.set_component(t, RatFunc(p));
    }
    return m;
}

inline SymCovariant random_sym(const ChartPtr& chart, int degree, Rng& rng, uint32_t deg = 2) {
    SymCovariant g(chart, degree);
    for (const auto& t : nondecreasing_tuples(chart->arity(), degree)) {
        if (rng.below(3) == 0) continue;
        Poly p = random_poly(chart, rng, deg);
        if (!p.is_zero()) g.set_component(t, RatFunc(p));
    }
    return g;
}

inline OneForm random_oneform(const ChartPtr& chart, Rng& rng, uint32_t deg = 2) {
    OneForm a(chart);
    for (int i = 0; i < chart->arity(); ++i) a.comp(i) = RatFunc(random_poly(chart, rng, deg));
    return a;
}

inline Multivector random_vector_field(const ChartPtr& chart, Rng& rng, uint32_t deg = 2) {
    return random_multivector(chart, 1, rng, deg);
}

// Torsion-free connection with small polynomial symbols.
inline LinearConnection random_connection(const ChartPtr& chart, Rng& rng, uint32_t deg = 1) {
    LinearConnection C(chart, true);
    int n = chart->arity();
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                if (rng.below(2) == 0) continue;
                Poly p = random_poly(chart, rng, deg, 2);
                if (!p.is_zero()) C.set_gamma(k, i, j, RatFunc(p));
            }
    return C;
}

} // namespace plift::testing

#endif

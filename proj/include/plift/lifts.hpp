#ifndef PLIFT_LIFTS_HPP
#define PLIFT_LIFTS_HPP

#include "plift/brackets.hpp"
#include "plift/connections.hpp"

namespace plift {

// iota: symmetric covariant tensors on M -> fiberwise homogeneous polynomials
// on TM, iota(G) = G_{i_1..i_k} y^{i_1}...y^{i_k}; an algebra isomorphism.
RatFunc iota(const SymCovariant& G);
RatFunc iota(const OneForm& a); // l(a) = a_i y^i
// Inverse on fiberwise homogeneous polynomials; rejects anything else.
SymCovariant iota_inverse(const RatFunc& F);

// Vertical lifts: f^V = f o pi, X^V = X^i d/dy^i, (P^Q)^V = P^V ^ Q^V.
RatFunc vertical_lift(const RatFunc& f);
Multivector vertical_lift(const Multivector& P);

// Complete lifts: f^C = y^k d_k f, X^C = X^i d/dx^i + y^k (d_k X^i) d/dy^i,
// extended by (P^Q)^C = P^C^Q^V + P^V^Q^C; for bivectors this reproduces the
// canonical complete lift exactly (asserted by the test suite).
RatFunc complete_lift(const RatFunc& f);
Multivector complete_lift(const Multivector& P);

// Euler field E = y^i d/dy^i on a tangent chart.
Multivector euler_field(const ChartPtr& tangent_chart);

// Semispray: S = y^i d/dx^i + sigma^i(x,y) d/dy^i.
class Semispray {
public:
    Semispray() = default;
    explicit Semispray(Multivector field); // validates the x-components
    const Multivector& field() const { return field_; }
    const ChartPtr& chart() const { return field_.chart(); }

private:
    Multivector field_;
};

// Geodesic spray of a linear connection: S = y^i d/dx^i - y^i y^k Gamma^j_{ik} d/dy^j.
Semispray geodesic_spray(const LinearConnection& C);

// Horizontal lift of a bivector through a nonlinear connection:
// w^H = (1/2) w^{ij} (delta/delta x^i) ^ (delta/delta x^j).
Multivector horizontal_lift_bivector(const Multivector& w, const NonlinearConnection& N);

// Symmetrized covariant derivative:
// (s-nabla H)(X_1..X_{k+1}) = 1/(k+1) sum_i (nabla_{X_i} H)(.. X_i omitted ..).
SymCovariant sym_nabla(const LinearConnection& C, const SymCovariant& H);

// Graded nabla-lift W = -(1/2) L_S w^C of a Poisson bivector along a
// torsion-free connection. Computed both through the operator definition and
// through the closed-form expansion; the two must agree.
Multivector graded_nabla_lift(const Multivector& w, const LinearConnection& C);
// The closed-form expansion alone (exposed for the test oracles).
Multivector graded_nabla_lift_closed_form(const Multivector& w, const LinearConnection& C);

} // namespace plift

#endif

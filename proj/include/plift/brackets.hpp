#ifndef PLIFT_BRACKETS_HPP
#define PLIFT_BRACKETS_HPP

#include "plift/connections.hpp"
#include "plift/tensors.hpp"

namespace plift {

// Odd-variable calculus on multivectors: a degree-k multivector is the odd
// polynomial sum_t P^t xi_{t_1}...xi_{t_k}.

// Left derivative d/dxi_k; degree drops by one.
Multivector xi_derivative(const Multivector& P, int k);
// Coefficient-wise d/dx^k.
Multivector coeff_derivative(const Multivector& P, int k);

// Schouten-Nijenhuis bracket. Sign convention pinned by two anchors:
// degree-1 brackets reduce to the Lie bracket of vector fields, and
// [w,w](df,dg,dh) = 2 sum_cyc {{f,g},h} for every bivector w with
// {f,g} = w(df,dg). With these anchors the graded identities hold as
//   [P,Q] = -(-1)^{(p-1)(q-1)} [Q,P]
//   [P,Q^R] = (-1)^{(p-1)r} [P,Q]^R + Q^[P,R]
//   [P,[Q,R]] = [[P,Q],R] + (-1)^{(p-1)(q-1)} [Q,[P,R]].
Multivector schouten_bracket(const Multivector& P, const Multivector& Q);

// Lie bracket of vector fields, [X,Y]^i = X^j d_j Y^i - Y^j d_j X^i.
Multivector lie_bracket(const Multivector& X, const Multivector& Y);

// Lie derivatives along a vector field.
RatFunc lie_derivative(const Multivector& X, const RatFunc& f);
Multivector lie_derivative(const Multivector& X, const Multivector& P);
SymCovariant lie_derivative(const Multivector& X, const SymCovariant& G);
OneForm lie_derivative(const Multivector& X, const OneForm& a);
// L_X mu = (div_mu X) mu, packaged as the divergence scalar times the form
// (sqrt-mode densities have no faithful product representation).
struct ScaledVolume {
    RatFunc factor;
    VolumeForm form;
};
ScaledVolume lie_derivative(const Multivector& X, const VolumeForm& mu);
RatFunc divergence(const Multivector& X, const VolumeForm& mu);

// Koszul bracket of one-forms of a Poisson bivector:
// {a,b} = L_{sharp a} b - L_{sharp b} a - d(w(a,b)).
OneForm koszul_bracket(const Multivector& w, const OneForm& a, const OneForm& b);

// Poisson bracket {f,g} = w(df,dg).
RatFunc poisson_bracket(const Multivector& w, const RatFunc& f, const RatFunc& g);

// Lichnerowicz-Poisson coboundary sigma Q = -[w,Q].
Multivector lichnerowicz_coboundary(const Multivector& w, const Multivector& Q);

} // namespace plift

#endif

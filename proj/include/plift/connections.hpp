#ifndef PLIFT_CONNECTIONS_HPP
#define PLIFT_CONNECTIONS_HPP

#include <vector>

#include "plift/tensors.hpp"

namespace plift {

// Linear connection Gamma^k_{ij} on a base chart; components are functions of
// the base coordinates only.
class LinearConnection {
public:
    LinearConnection() = default;
    LinearConnection(ChartPtr chart, bool torsion_free = true);

    const ChartPtr& chart() const { return chart_; }
    bool torsion_free() const { return torsion_free_; }
    int dim() const { return chart_ ? chart_->arity() : 0; }

    const RatFunc& gamma(int k, int i, int j) const;
    void set_gamma(int k, int i, int j, const RatFunc& v);

    bool is_flat_zero() const; // all symbols identically zero

private:
    size_t idx(int k, int i, int j) const;

    ChartPtr chart_;
    bool torsion_free_ = true;
    std::vector<RatFunc> gamma_;
};

// Nonlinear connection Gamma^j_i(x, y) on a tangent chart.
class NonlinearConnection {
public:
    NonlinearConnection() = default;
    explicit NonlinearConnection(ChartPtr tangent_chart);

    const ChartPtr& chart() const { return chart_; } // tangent chart
    int dim() const { return chart_ ? chart_->base_dim() : 0; }

    const RatFunc& gamma(int j, int i) const; // Gamma^j_i
    void set_gamma(int j, int i, const RatFunc& v);

    // From a linear connection: Gamma^j_i = Gamma^j_{ik}(x) y^k.
    static NonlinearConnection from_linear(const LinearConnection& C);

    // delta/delta x^i = d/dx^i - Gamma^j_i d/dy^j as a vector field on TM.
    Multivector horizontal_frame(int i) const;
    // delta F / delta x^i for a function on TM.
    RatFunc delta(const RatFunc& F, int i) const;

private:
    ChartPtr chart_;
    std::vector<RatFunc> gamma_;
};

// Contravariant connection D_{dx^i} dx^j = Gamma^{ij}_k dx^k on a Poisson base
// chart, tied to its reference bivector.
class ContravariantConnection {
public:
    ContravariantConnection() = default;
    ContravariantConnection(Multivector w);

    const ChartPtr& chart() const { return w_.chart(); }
    const Multivector& reference() const { return w_; }
    int dim() const { return w_.chart() ? w_.chart()->arity() : 0; }

    const RatFunc& gamma(int i, int j, int k) const; // Gamma^{ij}_k
    void set_gamma(int i, int j, int k, const RatFunc& v);

    // D_{df} alpha and D_{df} G (extension to symmetric tensors).
    OneForm derive_form(const RatFunc& f, const OneForm& alpha) const;
    SymCovariant derive_sym(const RatFunc& f, const SymCovariant& G) const;

private:
    size_t idx(int i, int j, int k) const;

    Multivector w_;
    std::vector<RatFunc> gamma_;
};

// Symmetric nondegenerate metric, consumed only through det g.
class Metric {
public:
    Metric() = default;
    explicit Metric(ChartPtr chart);

    const ChartPtr& chart() const { return chart_; }
    int dim() const { return chart_ ? chart_->arity() : 0; }

    const RatFunc& g(int i, int j) const;
    void set_g(int i, int j, const RatFunc& v); // sets both (i,j) and (j,i)

    RatFunc determinant() const;

private:
    ChartPtr chart_;
    std::vector<RatFunc> g_;
};

// Determinant of a square RatFunc matrix (Laplace expansion; sizes are small).
RatFunc matrix_determinant(const std::vector<std::vector<RatFunc>>& m);

// Curvature of a linear connection:
// R^k_{hij} = d_i Gamma^k_{hj} - d_j Gamma^k_{hi}
//           + Gamma^k_{il} Gamma^l_{hj} - Gamma^k_{jl} Gamma^l_{hi}.
class LinearCurvature {
public:
    LinearCurvature() = default;
    explicit LinearCurvature(const LinearConnection& C);

    const ChartPtr& chart() const { return chart_; }
    const RatFunc& r(int k, int h, int i, int j) const;
    bool is_zero() const;

private:
    ChartPtr chart_;
    int n_ = 0;
    std::vector<RatFunc> r_;
};

// Curvature of a nonlinear connection:
// R^k_{ij} = delta Gamma^k_j / delta x^i - delta Gamma^k_i / delta x^j
// (components live on the tangent chart).
class NonlinearCurvature {
public:
    NonlinearCurvature() = default;
    explicit NonlinearCurvature(const NonlinearConnection& N);

    const ChartPtr& chart() const { return chart_; } // tangent chart
    const RatFunc& r(int k, int i, int j) const;
    bool is_zero() const;

private:
    ChartPtr chart_;
    int n_ = 0;
    std::vector<RatFunc> r_;
};

// Covariant derivative nabla_X H of a symmetric covariant tensor.
SymCovariant nabla_covariant(const LinearConnection& C, const SymCovariant& H, const Multivector& X);
// nabla_a H as an indexed family: component (a; tuple).
SymCovariant nabla_slot(const LinearConnection& C, const SymCovariant& H, int a);

// Covariant derivative of a bivector, (nabla w)^{ij}_b.
class NablaBivector {
public:
    NablaBivector() = default;
    NablaBivector(const LinearConnection& C, const Multivector& w);
    const RatFunc& comp(int i, int j, int b) const;
    const ChartPtr& chart() const { return chart_; }
    bool is_zero() const;

private:
    ChartPtr chart_;
    int n_ = 0;
    std::vector<RatFunc> c_;
};

// Second covariant derivative (nabla^2 w)(X, Y) = (nabla_X (nabla w)) Y,
// indexed as (i, j; a, b) with a the X-slot and b the Y-slot.
class NablaSquaredBivector {
public:
    NablaSquaredBivector() = default;
    NablaSquaredBivector(const LinearConnection& C, const Multivector& w);
    const RatFunc& comp(int i, int j, int a, int b) const;
    const ChartPtr& chart() const { return chart_; }
    bool is_zero() const;

private:
    ChartPtr chart_;
    int n_ = 0;
    std::vector<RatFunc> c_;
};

} // namespace plift

#endif

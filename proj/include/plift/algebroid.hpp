#ifndef PLIFT_ALGEBROID_HPP
#define PLIFT_ALGEBROID_HPP

#include <memory>
#include <string>

#include "plift/brackets.hpp"

namespace plift {

class LieAlgebroid;
using AlgebroidPtr = std::shared_ptr<const LieAlgebroid>;

// Lie algebroid over a base chart: an anchor matrix sigma^i_u and structure
// functions c^w_{uv} with [e_u, e_v] = c^w_{uv} e_w. Symmetric tensors over
// the algebroid are worked with as fiberwise polynomials on an extended chart
// that adds one even slot variable per basis section.
class LieAlgebroid {
public:
    // Generic constructor; anchor[u][i] and c[u][v][w] are base-chart functions.
    static AlgebroidPtr make(ChartPtr base, int rank, std::vector<std::vector<RatFunc>> anchor,
                             std::vector<std::vector<std::vector<RatFunc>>> structure, std::string label);

    // Tangent algebroid: sections are the coordinate fields, anchor identity,
    // zero structure functions; the extended chart is the tangent chart.
    static AlgebroidPtr tangent(const ChartPtr& base);
    // Cotangent algebroid of a Poisson bivector: e_i = dx^i, anchor sharp_w,
    // structure functions from the Koszul bracket on the coframe.
    static AlgebroidPtr cotangent(const Multivector& w);

    const ChartPtr& base() const { return base_; }
    const ChartPtr& extended() const { return ext_; }
    int rank() const { return rank_; }
    const std::string& label() const { return label_; }

    const RatFunc& anchor(int u, int i) const; // sigma^i_u
    const RatFunc& structure(int u, int v, int w) const; // c^w_{uv}

    // Anchor image of a section given by basis coefficients.
    Multivector anchor_of(const std::vector<RatFunc>& section) const;

    // sigma(s) applied to a base function, for the basis section e_u.
    RatFunc anchor_derive(int u, const RatFunc& f) const;

    // Checkable axioms (predicates, not construction-time requirements).
    bool anchor_compatible() const;
    bool jacobi_holds() const;

    // Slot variable index (in the extended chart) of section u.
    int slot(int u) const { return base_->arity() + u; }

    RatFunc to_extended(const RatFunc& base_fn) const;     // pullback of a base function
    RatFunc from_extended_scalar(const RatFunc& f) const;  // slot-free function back on the base

private:
    LieAlgebroid() = default;

    ChartPtr base_;
    ChartPtr ext_;
    int rank_ = 0;
    std::string label_;
    std::vector<RatFunc> anchor_;    // [u * n + i]
    std::vector<RatFunc> structure_; // [(u * p + v) * p + w]
};

// Symmetric tensor over algebroid sections, stored like SymCovariant: one
// component per non-decreasing tuple of section indices, holding the fully
// symmetric component value.
class AlgebroidSymTensor {
public:
    AlgebroidSymTensor() = default;
    AlgebroidSymTensor(AlgebroidPtr algebroid, int degree);

    static AlgebroidSymTensor function(AlgebroidPtr algebroid, const RatFunc& f);
    static AlgebroidSymTensor basis_section(AlgebroidPtr algebroid, int u);
    // Degree-1 tensor from section coefficients.
    static AlgebroidSymTensor section(AlgebroidPtr algebroid, const std::vector<RatFunc>& coeffs);

    const AlgebroidPtr& algebroid() const { return alg_; }
    int degree() const { return degree_; }
    bool is_zero() const { return comps_.empty(); }
    const std::map<IndexTuple, RatFunc>& components() const { return comps_; }

    RatFunc component(const IndexTuple& sorted) const;
    void set_component(const IndexTuple& sorted, const RatFunc& v);
    void add_sorted(IndexTuple t, const RatFunc& v);

    AlgebroidSymTensor operator-() const;
    AlgebroidSymTensor& operator+=(const AlgebroidSymTensor& o);
    friend AlgebroidSymTensor operator+(AlgebroidSymTensor a, const AlgebroidSymTensor& b) { return a += b; }
    AlgebroidSymTensor operator*(const RatFunc& f) const;
    bool operator==(const AlgebroidSymTensor& o) const;
    bool operator!=(const AlgebroidSymTensor& o) const { return !(*this == o); }

    // Fiberwise polynomial on the extended chart, and back.
    RatFunc to_polynomial() const;
    static AlgebroidSymTensor from_polynomial(AlgebroidPtr algebroid, const RatFunc& f, int degree);

    std::string str() const;

    // Cotangent-algebroid tensors are plain symmetric covariant tensors.
    SymCovariant as_sym_covariant() const;
    static AlgebroidSymTensor from_sym_covariant(AlgebroidPtr cotangent, const SymCovariant& G);

private:
    AlgebroidPtr alg_;
    int degree_ = 0;
    std::map<IndexTuple, RatFunc> comps_;
};

// Symmetric product (same normalization as SymCovariant).
AlgebroidSymTensor sym_product(const AlgebroidSymTensor& G, const AlgebroidSymTensor& H);

// Symmetric Schouten bracket <G,H> of degrees (p,q) -> p+q-1: the unique
// local-type extension of the algebroid Lie derivative, realized as the
// canonical Poisson-type biderivation on fiberwise polynomials:
//   {z_u, z_v} = c^w_{uv} z_w, {z_u, f} = sigma(e_u) f, {f,g} = 0.
AlgebroidSymTensor sym_bracket(const AlgebroidSymTensor& G, const AlgebroidSymTensor& H);

// Lie derivative along a section: <s, T> extended to functions.
AlgebroidSymTensor algebroid_lie_derivative(const AlgebroidSymTensor& s, const AlgebroidSymTensor& T);
RatFunc algebroid_lie_derivative(const AlgebroidSymTensor& s, const RatFunc& f);

// The biderivation on raw extended-chart polynomials (degree bookkeeping left
// to the caller); sym_bracket is a thin wrapper.
RatFunc algebroid_poisson_bracket(const LieAlgebroid& A, const RatFunc& F, const RatFunc& G);

} // namespace plift

#endif

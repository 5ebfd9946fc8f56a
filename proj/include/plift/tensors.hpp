#ifndef PLIFT_TENSORS_HPP
#define PLIFT_TENSORS_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "plift/ratfunc.hpp"

namespace plift {

using IndexTuple = std::vector<int>; // 0-based variable indices

// Degree-k skew contravariant tensor field. One stored component per strictly
// increasing index tuple: P = sum_t P^t d/dx^{t_1} ^ ... ^ d/dx^{t_k}. The
// classical antisymmetric components are P^{sigma(t)} = sign(sigma) P^t, so a
// bivector entered as w[1,2] = x3 is w = x3 d1^d2 with w^{12} = x3 = -w^{21}.
class Multivector {
public:
    Multivector() = default;
    Multivector(ChartPtr chart, int degree);

    static Multivector zero(ChartPtr chart, int degree) { return Multivector(std::move(chart), degree); }
    static Multivector function(const RatFunc& f);
    static Multivector basis_vector(ChartPtr chart, int i); // d/dx^i

    const ChartPtr& chart() const { return chart_; }
    int degree() const { return degree_; }
    bool is_zero() const { return comps_.empty(); }
    const std::map<IndexTuple, RatFunc>& components() const { return comps_; }

    // Stored component at a strictly increasing tuple (zero when absent).
    RatFunc component(const IndexTuple& sorted) const;
    // Component at an arbitrary tuple, with the antisymmetry sign; zero for
    // repeated indices.
    RatFunc full_component(const IndexTuple& t) const;
    void set_component(const IndexTuple& sorted, const RatFunc& v);
    // Adds c * d_{t_1} ^ ... ^ d_{t_k}; sorts the tuple and tracks the sign.
    void add_full(const IndexTuple& t, const RatFunc& c);

    // Degree-0 content as a function.
    RatFunc scalar_part() const;

    Multivector operator-() const;
    Multivector& operator+=(const Multivector& o);
    Multivector& operator-=(const Multivector& o);
    friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
    friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
    Multivector operator*(const RatFunc& f) const;
    Multivector operator*(const Scalar& c) const;
    bool operator==(const Multivector& o) const;
    bool operator!=(const Multivector& o) const { return !(*this == o); }

    // Pairing with one-forms given as dense component vectors:
    // P(a_1,...,a_k) = sum_t P^t det(a_r(t_s)).
    RatFunc pair(const std::vector<std::vector<RatFunc>>& forms) const;

    std::string str() const;

    void check_same_chart(const Multivector& o) const;

private:
    ChartPtr chart_;
    int degree_ = 0;
    std::map<IndexTuple, RatFunc> comps_;
};

// Exterior product with shuffle signs; degree-0 factors act as scalars.
Multivector wedge(const Multivector& P, const Multivector& Q);

// Fully symmetric covariant tensor of degree k. One stored component per
// non-decreasing tuple, holding the value of the symmetric component array
// G_{i_1...i_k}; the fiberwise polynomial of G is
// iota(G) = sum over all tuples of G_{i_1...i_k} y^{i_1}...y^{i_k}.
class SymCovariant {
public:
    SymCovariant() = default;
    SymCovariant(ChartPtr chart, int degree);

    static SymCovariant function(const RatFunc& f);
    static SymCovariant basis_form(ChartPtr chart, int i); // dx^i

    const ChartPtr& chart() const { return chart_; }
    int degree() const { return degree_; }
    bool is_zero() const { return comps_.empty(); }
    const std::map<IndexTuple, RatFunc>& components() const { return comps_; }

    RatFunc component(const IndexTuple& sorted) const;
    RatFunc full_component(IndexTuple t) const; // any order
    void set_component(const IndexTuple& sorted, const RatFunc& v);
    void add_sorted(IndexTuple t, const RatFunc& v); // sorts, then accumulates

    RatFunc scalar_part() const;

    SymCovariant operator-() const;
    SymCovariant& operator+=(const SymCovariant& o);
    SymCovariant& operator-=(const SymCovariant& o);
    friend SymCovariant operator+(SymCovariant a, const SymCovariant& b) { return a += b; }
    friend SymCovariant operator-(SymCovariant a, const SymCovariant& b) { return a -= b; }
    SymCovariant operator*(const RatFunc& f) const;
    SymCovariant operator*(const Scalar& c) const;
    bool operator==(const SymCovariant& o) const;
    bool operator!=(const SymCovariant& o) const { return !(*this == o); }

    std::string str() const;

    void check_same_chart(const SymCovariant& o) const;

    // Number of distinct permutations of a sorted tuple.
    static Scalar multiplicity(const IndexTuple& sorted);

    // Map from exponent vectors to iota coefficients: e -> mult(t_e) * G_{t_e}.
    std::map<Exponents, RatFunc> iota_coefficients() const;
    static SymCovariant from_iota_coefficients(ChartPtr chart, int degree, const std::map<Exponents, RatFunc>& coeffs);

private:
    ChartPtr chart_;
    int degree_ = 0;
    std::map<IndexTuple, RatFunc> comps_;
};

// Symmetric product normalized so that iota(G . H) = iota(G) iota(H).
SymCovariant sym_product(const SymCovariant& G, const SymCovariant& H);

// Pfaff form alpha = alpha_i dx^i with dense components.
class OneForm {
public:
    OneForm() = default;
    explicit OneForm(ChartPtr chart);
    OneForm(ChartPtr chart, std::vector<RatFunc> comps);

    static OneForm basis(ChartPtr chart, int i); // dx^i
    static OneForm differential(const RatFunc& f);

    const ChartPtr& chart() const { return chart_; }
    const RatFunc& comp(int i) const { return comps_.at(static_cast<size_t>(i)); }
    RatFunc& comp(int i) { return comps_.at(static_cast<size_t>(i)); }
    const std::vector<RatFunc>& components() const { return comps_; }
    bool is_zero() const;

    OneForm operator-() const;
    OneForm& operator+=(const OneForm& o);
    OneForm& operator-=(const OneForm& o);
    friend OneForm operator+(OneForm a, const OneForm& b) { return a += b; }
    friend OneForm operator-(OneForm a, const OneForm& b) { return a -= b; }
    OneForm operator*(const RatFunc& f) const;
    bool operator==(const OneForm& o) const { return chart_ == o.chart_ && comps_ == o.comps_; }
    bool operator!=(const OneForm& o) const { return !(*this == o); }

    SymCovariant as_sym() const; // degree-1 symmetric tensor
    static OneForm from_sym(const SymCovariant& G);

    // alpha(X) for a vector field X (degree-1 multivector).
    RatFunc apply(const Multivector& X) const;

    std::string str() const;

private:
    ChartPtr chart_;
    std::vector<RatFunc> comps_;
};

// Volume form rho dx^1^...^dx^n (or rho dx^1^...^dy^n on a tangent chart).
// When sqrt_mode is set the stored density d means rho = sqrt(d); only
// logarithmic derivatives of rho are ever consumed, and those stay rational.
class VolumeForm {
public:
    VolumeForm() = default;
    VolumeForm(ChartPtr chart, RatFunc density, bool sqrt_mode = false);

    const ChartPtr& chart() const { return chart_; }
    const RatFunc& density() const { return density_; }
    bool sqrt_mode() const { return sqrt_mode_; }

    // d(log rho)/dx^i, always rational.
    RatFunc dlog(int var) const;

    std::string str() const;

private:
    ChartPtr chart_;
    RatFunc density_;
    bool sqrt_mode_ = false;
};

// Contractions. i_alpha P contracts a multivector in its first slot.
// i_X G on symmetric tensors follows the derivation convention
// i_X(G . H) = (i_X G) . H + G . (i_X H), i.e. degree * first-slot contraction.
Multivector interior_form(const OneForm& alpha, const Multivector& P);
SymCovariant interior_vector(const Multivector& X, const SymCovariant& G);

// (sharp alpha)^j = w^{ij} alpha_i, so that beta(sharp alpha) = w(alpha, beta).
Multivector sharp(const Multivector& w, const OneForm& alpha);

// w(alpha, beta) = w^{ij} alpha_i beta_j.
RatFunc bivector_eval(const Multivector& w, const OneForm& alpha, const OneForm& beta);

// Enumerates all tuples: strictly increasing / non-decreasing of length k
// over indices [0, n).
std::vector<IndexTuple> increasing_tuples(int n, int k);
std::vector<IndexTuple> nondecreasing_tuples(int n, int k);

} // namespace plift

#endif

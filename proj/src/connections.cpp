#include "plift/connections.hpp"

namespace plift {

// ----------------------------------------------------------- LinearConnection

LinearConnection::LinearConnection(ChartPtr chart, bool torsion_free)
    : chart_(std::move(chart)), torsion_free_(torsion_free) {
    if (chart_->is_tangent()) throw structural_error("linear connections live on a base chart");
    size_t n = static_cast<size_t>(chart_->arity());
    gamma_.assign(n * n * n, RatFunc::zero(chart_));
}

size_t LinearConnection::idx(int k, int i, int j) const {
    size_t n = static_cast<size_t>(chart_->arity());
    return (static_cast<size_t>(k) * n + static_cast<size_t>(i)) * n + static_cast<size_t>(j);
}

const RatFunc& LinearConnection::gamma(int k, int i, int j) const { return gamma_.at(idx(k, i, j)); }

void LinearConnection::set_gamma(int k, int i, int j, const RatFunc& v) {
    if (v.chart() != chart_) throw structural_error("connection symbol on the wrong chart");
    for (int s = 0; s < chart_->arity(); ++s)
        if (v.depends_on(s) && chart_->is_fiber_slot(s))
            throw structural_error("linear connection symbols must not involve fiber variables");
    gamma_.at(idx(k, i, j)) = v;
    if (torsion_free_ && i != j) gamma_.at(idx(k, j, i)) = v;
}

bool LinearConnection::is_flat_zero() const {
    for (const auto& g : gamma_)
        if (!g.is_zero()) return false;
    return true;
}

// -------------------------------------------------------- NonlinearConnection

NonlinearConnection::NonlinearConnection(ChartPtr tangent_chart) : chart_(std::move(tangent_chart)) {
    if (!chart_->is_tangent()) throw structural_error("nonlinear connections live on a tangent chart");
    size_t n = static_cast<size_t>(chart_->base_dim());
    gamma_.assign(n * n, RatFunc::zero(chart_));
}

const RatFunc& NonlinearConnection::gamma(int j, int i) const {
    size_t n = static_cast<size_t>(dim());
    return gamma_.at(static_cast<size_t>(j) * n + static_cast<size_t>(i));
}

void NonlinearConnection::set_gamma(int j, int i, const RatFunc& v) {
    if (v.chart() != chart_) throw structural_error("connection coefficient on the wrong chart");
    size_t n = static_cast<size_t>(dim());
    gamma_[static_cast<size_t>(j) * n + static_cast<size_t>(i)] = v;
}

NonlinearConnection NonlinearConnection::from_linear(const LinearConnection& C) {
    ChartPtr tc = C.chart()->tangent();
    NonlinearConnection N(tc);
    int n = C.dim();
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            RatFunc acc = RatFunc::zero(tc);
            for (int k = 0; k < n; ++k) {
                const RatFunc& g = C.gamma(j, i, k);
                if (g.is_zero()) continue;
                acc += g.lift_to_tangent() * RatFunc::variable(tc, n + k);
            }
            N.set_gamma(j, i, acc);
        }
    }
    return N;
}

Multivector NonlinearConnection::horizontal_frame(int i) const {
    int n = dim();
    Multivector d(chart_, 1);
    d.set_component({i}, RatFunc::one(chart_));
    for (int j = 0; j < n; ++j) {
        const RatFunc& g = gamma(j, i);
        if (!g.is_zero()) d.set_component({n + j}, -g);
    }
    return d;
}

RatFunc NonlinearConnection::delta(const RatFunc& F, int i) const {
    if (F.chart() != chart_) throw structural_error("delta derivative needs a tangent-chart function");
    int n = dim();
    RatFunc acc = F.derivative(i);
    for (int j = 0; j < n; ++j) {
        const RatFunc& g = gamma(j, i);
        if (!g.is_zero()) acc -= g * F.derivative(n + j);
    }
    return acc;
}

// ---------------------------------------------------- ContravariantConnection

ContravariantConnection::ContravariantConnection(Multivector w) : w_(std::move(w)) {
    if (w_.degree() != 2) throw structural_error("contravariant connection needs a reference bivector");
    size_t n = static_cast<size_t>(w_.chart()->arity());
    gamma_.assign(n * n * n, RatFunc::zero(w_.chart()));
}

size_t ContravariantConnection::idx(int i, int j, int k) const {
    size_t n = static_cast<size_t>(dim());
    return (static_cast<size_t>(i) * n + static_cast<size_t>(j)) * n + static_cast<size_t>(k);
}

const RatFunc& ContravariantConnection::gamma(int i, int j, int k) const { return gamma_.at(idx(i, j, k)); }

void ContravariantConnection::set_gamma(int i, int j, int k, const RatFunc& v) {
    if (v.chart() != chart()) throw structural_error("connection symbol on the wrong chart");
    gamma_.at(idx(i, j, k)) = v;
}

OneForm ContravariantConnection::derive_form(const RatFunc& f, const OneForm& alpha) const {
    // D_{df}(alpha_j dx^j) = alpha_j D_{df} dx^j + (X_f alpha_j) dx^j with
    // D_{df} = (d_a f) D_{dx^a} and X_f = sharp(df).
    if (f.chart() != chart() || alpha.chart() != chart()) throw structural_error("chart mismatch in D");
    int n = dim();
    OneForm df = OneForm::differential(f);
    Multivector xf = sharp(w_, df);
    OneForm out(chart());
    for (int k = 0; k < n; ++k) {
        RatFunc acc = RatFunc::zero(chart());
        for (int a = 0; a < n; ++a) {
            const RatFunc& dfa = df.comp(a);
            if (dfa.is_zero()) continue;
            for (int j = 0; j < n; ++j) {
                const RatFunc& g = gamma(a, j, k);
                if (g.is_zero() || alpha.comp(j).is_zero()) continue;
                acc += dfa * alpha.comp(j) * g;
            }
        }
        // X_f applied to the component functions.
        for (const auto& [t, xv] : xf.components()) acc += xv * alpha.comp(k).derivative(t[0]);
        out.comp(k) = acc;
    }
    return out;
}

SymCovariant ContravariantConnection::derive_sym(const RatFunc& f, const SymCovariant& G) const {
    // (D_{df} G)_{i_1..i_k} = X_f(G_{i_1..i_k})
    //                        + sum_l (d_a f) Gamma^{ah}_{i_l} G_{i_1..h..i_k}.
    if (f.chart() != chart() || G.chart() != chart()) throw structural_error("chart mismatch in D");
    int n = dim();
    OneForm df = OneForm::differential(f);
    Multivector xf = sharp(w_, df);
    SymCovariant out(chart(), G.degree());
    for (const auto& t : nondecreasing_tuples(n, G.degree())) {
        RatFunc acc = RatFunc::zero(chart());
        RatFunc gt = G.component(t);
        if (!gt.is_zero())
            for (const auto& [s, xv] : xf.components()) acc += xv * gt.derivative(s[0]);
        for (size_t l = 0; l < t.size(); ++l) {
            for (int a = 0; a < n; ++a) {
                const RatFunc& dfa = df.comp(a);
                if (dfa.is_zero()) continue;
                for (int h = 0; h < n; ++h) {
                    const RatFunc& g = gamma(a, h, t[l]);
                    if (g.is_zero()) continue;
                    IndexTuple u = t;
                    u[l] = h;
                    RatFunc gv = G.full_component(u);
                    if (gv.is_zero()) continue;
                    acc += dfa * g * gv;
                }
            }
        }
        if (!acc.is_zero()) out.add_sorted(t, acc);
    }
    return out;
}

// --------------------------------------------------------------------- Metric

Metric::Metric(ChartPtr chart) : chart_(std::move(chart)) {
    size_t n = static_cast<size_t>(chart_->arity());
    g_.assign(n * n, RatFunc::zero(chart_));
}

const RatFunc& Metric::g(int i, int j) const {
    size_t n = static_cast<size_t>(dim());
    return g_.at(static_cast<size_t>(i) * n + static_cast<size_t>(j));
}

void Metric::set_g(int i, int j, const RatFunc& v) {
    size_t n = static_cast<size_t>(dim());
    g_.at(static_cast<size_t>(i) * n + static_cast<size_t>(j)) = v;
    g_.at(static_cast<size_t>(j) * n + static_cast<size_t>(i)) = v;
}

RatFunc Metric::determinant() const {
    int n = dim();
    std::vector<std::vector<RatFunc>> m(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        m[static_cast<size_t>(i)].reserve(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) m[static_cast<size_t>(i)].push_back(g(i, j));
    }
    return matrix_determinant(m);
}

RatFunc matrix_determinant(const std::vector<std::vector<RatFunc>>& m) {
    size_t n = m.size();
    if (n == 0) throw structural_error("determinant of an empty matrix");
    ChartPtr chart = m[0][0].chart();
    if (n == 1) return m[0][0];
    RatFunc acc = RatFunc::zero(chart);
    for (size_t k = 0; k < n; ++k) {
        if (m[0][k].is_zero()) continue;
        std::vector<std::vector<RatFunc>> minor;
        minor.reserve(n - 1);
        for (size_t r = 1; r < n; ++r) {
            std::vector<RatFunc> row;
            row.reserve(n - 1);
            for (size_t c = 0; c < n; ++c)
                if (c != k) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        RatFunc term = m[0][k] * matrix_determinant(minor);
        if (k % 2) term = -term;
        acc += term;
    }
    return acc;
}

// ------------------------------------------------------------------ curvature

LinearCurvature::LinearCurvature(const LinearConnection& C) : chart_(C.chart()), n_(C.dim()) {
    size_t n = static_cast<size_t>(n_);
    r_.assign(n * n * n * n, RatFunc::zero(chart_));
    for (int k = 0; k < n_; ++k)
        for (int h = 0; h < n_; ++h)
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < i; ++j) {
                    RatFunc v = C.gamma(k, h, j).derivative(i) - C.gamma(k, h, i).derivative(j);
                    for (int l = 0; l < n_; ++l)
                        v += C.gamma(k, i, l) * C.gamma(l, h, j) - C.gamma(k, j, l) * C.gamma(l, h, i);
                    size_t base = ((static_cast<size_t>(k) * n + static_cast<size_t>(h)) * n);
                    r_[(base + static_cast<size_t>(i)) * n + static_cast<size_t>(j)] = v;
                    r_[(base + static_cast<size_t>(j)) * n + static_cast<size_t>(i)] = -v;
                }
}

const RatFunc& LinearCurvature::r(int k, int h, int i, int j) const {
    size_t n = static_cast<size_t>(n_);
    return r_.at(((static_cast<size_t>(k) * n + static_cast<size_t>(h)) * n + static_cast<size_t>(i)) * n +
                 static_cast<size_t>(j));
}

bool LinearCurvature::is_zero() const {
    for (const auto& v : r_)
        if (!v.is_zero()) return false;
    return true;
}

NonlinearCurvature::NonlinearCurvature(const NonlinearConnection& N) : chart_(N.chart()), n_(N.dim()) {
    size_t n = static_cast<size_t>(n_);
    r_.assign(n * n * n, RatFunc::zero(chart_));
    for (int k = 0; k < n_; ++k)
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < i; ++j) {
                RatFunc v = N.delta(N.gamma(k, j), i) - N.delta(N.gamma(k, i), j);
                r_[(static_cast<size_t>(k) * n + static_cast<size_t>(i)) * n + static_cast<size_t>(j)] = v;
                r_[(static_cast<size_t>(k) * n + static_cast<size_t>(j)) * n + static_cast<size_t>(i)] = -v;
            }
}

const RatFunc& NonlinearCurvature::r(int k, int i, int j) const {
    size_t n = static_cast<size_t>(n_);
    return r_.at((static_cast<size_t>(k) * n + static_cast<size_t>(i)) * n + static_cast<size_t>(j));
}

bool NonlinearCurvature::is_zero() const {
    for (const auto& v : r_)
        if (!v.is_zero()) return false;
    return true;
}

// ------------------------------------------------------ covariant derivatives

SymCovariant nabla_slot(const LinearConnection& C, const SymCovariant& H, int a) {
    if (C.chart() != H.chart()) throw structural_error("chart mismatch in covariant derivative");
    int n = C.dim();
    SymCovariant out(H.chart(), H.degree());
    for (const auto& t : nondecreasing_tuples(n, H.degree())) {
        RatFunc acc = H.component(t).derivative(a);
        for (size_t l = 0; l < t.size(); ++l) {
            for (int b = 0; b < n; ++b) {
                const RatFunc& g = C.gamma(b, a, t[l]);
                if (g.is_zero()) continue;
                IndexTuple u = t;
                u[l] = b;
                RatFunc hv = H.full_component(u);
                if (!hv.is_zero()) acc -= g * hv;
            }
        }
        if (!acc.is_zero()) out.add_sorted(t, acc);
    }
    return out;
}

SymCovariant nabla_covariant(const LinearConnection& C, const SymCovariant& H, const Multivector& X) {
    if (X.degree() != 1) throw structural_error("covariant derivative direction must be a vector field");
    if (X.chart() != H.chart()) throw structural_error("chart mismatch in covariant derivative");
    SymCovariant out(H.chart(), H.degree());
    for (const auto& [t, xv] : X.components()) out += nabla_slot(C, H, t[0]) * xv;
    return out;
}

NablaBivector::NablaBivector(const LinearConnection& C, const Multivector& w) : chart_(C.chart()), n_(C.dim()) {
    if (w.degree() != 2 || w.chart() != chart_) throw structural_error("nabla of a bivector needs a matching bivector");
    size_t n = static_cast<size_t>(n_);
    c_.assign(n * n * n, RatFunc::zero(chart_));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            for (int b = 0; b < n_; ++b) {
                IndexTuple t{i, j};
                RatFunc v = w.full_component(t).derivative(b);
                for (int k = 0; k < n_; ++k) {
                    v += C.gamma(i, b, k) * w.full_component({k, j});
                    v += C.gamma(j, b, k) * w.full_component({i, k});
                }
                c_[(static_cast<size_t>(i) * n + static_cast<size_t>(j)) * n + static_cast<size_t>(b)] = v;
            }
}

const RatFunc& NablaBivector::comp(int i, int j, int b) const {
    size_t n = static_cast<size_t>(n_);
    return c_.at((static_cast<size_t>(i) * n + static_cast<size_t>(j)) * n + static_cast<size_t>(b));
}

bool NablaBivector::is_zero() const {
    for (const auto& v : c_)
        if (!v.is_zero()) return false;
    return true;
}

NablaSquaredBivector::NablaSquaredBivector(const LinearConnection& C, const Multivector& w)
    : chart_(C.chart()), n_(C.dim()) {
    if (!C.torsion_free()) throw structural_error("nabla^2 w is defined for torsion-free connections");
    NablaBivector nw(C, w);
    size_t n = static_cast<size_t>(n_);
    c_.assign(n * n * n * n, RatFunc::zero(chart_));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            for (int a = 0; a < n_; ++a)
                for (int b = 0; b < n_; ++b) {
                    RatFunc v = nw.comp(i, j, b).derivative(a);
                    for (int k = 0; k < n_; ++k) {
                        v += C.gamma(i, a, k) * nw.comp(k, j, b);
                        v += C.gamma(j, a, k) * nw.comp(i, k, b);
                        v -= C.gamma(k, a, b) * nw.comp(i, j, k);
                    }
                    c_[((static_cast<size_t>(i) * n + static_cast<size_t>(j)) * n + static_cast<size_t>(a)) * n +
                       static_cast<size_t>(b)] = v;
                }
}

const RatFunc& NablaSquaredBivector::comp(int i, int j, int a, int b) const {
    size_t n = static_cast<size_t>(n_);
    return c_.at(((static_cast<size_t>(i) * n + static_cast<size_t>(j)) * n + static_cast<size_t>(a)) * n +
                 static_cast<size_t>(b));
}

bool NablaSquaredBivector::is_zero() const {
    for (const auto& v : c_)
        if (!v.is_zero()) return false;
    return true;
}

} // namespace plift

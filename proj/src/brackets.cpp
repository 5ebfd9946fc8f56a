#include "plift/brackets.hpp"

#include "plift/parallel.hpp"

namespace plift {

Multivector xi_derivative(const Multivector& P, int k) {
    if (P.degree() == 0) return Multivector::zero(P.chart(), 0);
    Multivector r(P.chart(), P.degree() - 1);
    for (const auto& [t, v] : P.components()) {
        for (size_t pos = 0; pos < t.size(); ++pos) {
            if (t[pos] != k) continue;
            IndexTuple s;
            s.reserve(t.size() - 1);
            for (size_t j = 0; j < t.size(); ++j)
                if (j != pos) s.push_back(t[j]);
            r.add_full(s, (pos % 2) ? -v : v);
            break;
        }
    }
    return r;
}

Multivector coeff_derivative(const Multivector& P, int k) {
    Multivector r(P.chart(), P.degree());
    for (const auto& [t, v] : P.components()) {
        RatFunc d = v.derivative(k);
        if (!d.is_zero()) r.set_component(t, d);
    }
    return r;
}

namespace {

// sum_k (d_xi_k A) ^ (d_x_k B)
Multivector mixed_sum(const Multivector& A, const Multivector& B) {
    int arity = A.chart()->arity();
    int deg = A.degree() - 1 + B.degree();
    std::vector<Multivector> parts(static_cast<size_t>(arity));
    par::parallel_for(static_cast<size_t>(arity), [&](size_t k) {
        Multivector da = xi_derivative(A, static_cast<int>(k));
        if (da.is_zero()) {
            parts[k] = Multivector::zero(A.chart(), deg);
            return;
        }
        parts[k] = wedge(da, coeff_derivative(B, static_cast<int>(k)));
    });
    Multivector acc = Multivector::zero(A.chart(), deg);
    for (auto& p : parts) acc += p;
    return acc;
}

} // namespace

Multivector schouten_bracket(const Multivector& P, const Multivector& Q) {
    P.check_same_chart(Q);
    int p = P.degree(), q = Q.degree();
    int deg = p + q - 1;
    if (deg < 0) return Multivector::zero(P.chart(), 0);
    // [P,Q] = s1 sum_k (dxi_k P)^(dx_k Q) + s2 sum_k (dxi_k Q)^(dx_k P) moved
    // to the standard order; signs fix the anchors documented in the header.
    // s1 = (-1)^{(p-1)(q-1)+p+1}; the second sum carries
    // s2' = -(-1)^{(p-1)(q-1)} on (dx_k P)^(dxi_k Q) which we realize as
    // (dxi_k Q)^(dx_k P) with the commutation sign (-1)^{p(q-1)} folded in.
    Multivector a = mixed_sum(P, Q); // sum (dxi P)^(dx Q), degree p-1+q
    Multivector b = mixed_sum(Q, P); // sum (dxi Q)^(dx P), degree q-1+p
    int e1 = ((p - 1) * (q - 1) + p + 1) % 2;
    int e2 = ((p - 1) * (q - 1) + 1 + p * (q - 1)) % 2;
    Multivector r = Multivector::zero(P.chart(), deg);
    r += (e1 % 2 == 0) ? a : -a;
    r += (e2 % 2 == 0) ? b : -b;
    return r;
}

Multivector lie_bracket(const Multivector& X, const Multivector& Y) {
    X.check_same_chart(Y);
    if (X.degree() != 1 || Y.degree() != 1) throw structural_error("lie_bracket expects vector fields");
    Multivector r(X.chart(), 1);
    for (const auto& [t, xv] : X.components()) {
        for (const auto& [s, yv] : Y.components()) {
            RatFunc a = xv * yv.derivative(t[0]);
            if (!a.is_zero()) r.add_full(s, a);
            RatFunc b = yv * xv.derivative(s[0]);
            if (!b.is_zero()) r.add_full(t, -b);
        }
    }
    return r;
}

RatFunc lie_derivative(const Multivector& X, const RatFunc& f) {
    if (X.degree() != 1) throw structural_error("lie derivative direction must be a vector field");
    if (X.chart() != f.chart()) throw structural_error("chart mismatch in lie derivative");
    RatFunc acc = RatFunc::zero(f.chart());
    for (const auto& [t, v] : X.components()) acc += v * f.derivative(t[0]);
    return acc;
}

Multivector lie_derivative(const Multivector& X, const Multivector& P) {
    if (X.degree() != 1) throw structural_error("lie derivative direction must be a vector field");
    X.check_same_chart(P);
    // L_X P = sum_k [ X^k d_{x^k} P - (d_{x^k} X) ^ (dxi_k P) ].
    Multivector acc(P.chart(), P.degree());
    for (const auto& [t, v] : X.components()) {
        Multivector dP = coeff_derivative(P, t[0]);
        if (!dP.is_zero()) acc += dP * v;
    }
    int arity = P.chart()->arity();
    for (int k = 0; k < arity; ++k) {
        Multivector dX = coeff_derivative(X, k);
        if (dX.is_zero()) continue;
        Multivector dxiP = xi_derivative(P, k);
        if (dxiP.is_zero()) continue;
        acc -= wedge(dX, dxiP);
    }
    return acc;
}

SymCovariant lie_derivative(const Multivector& X, const SymCovariant& G) {
    if (X.degree() != 1) throw structural_error("lie derivative direction must be a vector field");
    if (X.chart() != G.chart()) throw structural_error("chart mismatch in lie derivative");
    int n = G.chart()->arity();
    SymCovariant out(G.chart(), G.degree());
    for (const auto& t : nondecreasing_tuples(n, G.degree())) {
        RatFunc acc = lie_derivative(X, G.component(t));
        for (size_t l = 0; l < t.size(); ++l) {
            for (int a = 0; a < n; ++a) {
                RatFunc xa = X.component({a});
                if (xa.is_zero()) continue;
                IndexTuple u = t;
                u[l] = a;
                RatFunc gv = G.full_component(u);
                if (!gv.is_zero()) acc += xa.derivative(t[l]) * gv;
            }
        }
        if (!acc.is_zero()) out.add_sorted(t, acc);
    }
    return out;
}

OneForm lie_derivative(const Multivector& X, const OneForm& a) {
    return OneForm::from_sym(lie_derivative(X, a.as_sym()));
}

RatFunc divergence(const Multivector& X, const VolumeForm& mu) {
    if (X.degree() != 1) throw structural_error("divergence of a non-vector");
    if (X.chart() != mu.chart()) throw structural_error("chart mismatch in divergence");
    RatFunc acc = RatFunc::zero(X.chart());
    for (const auto& [t, v] : X.components()) acc += v.derivative(t[0]) + v * mu.dlog(t[0]);
    return acc;
}

ScaledVolume lie_derivative(const Multivector& X, const VolumeForm& mu) {
    return ScaledVolume{divergence(X, mu), mu};
}

OneForm koszul_bracket(const Multivector& w, const OneForm& a, const OneForm& b) {
    if (w.degree() != 2) throw structural_error("koszul bracket needs a bivector");
    if (w.chart() != a.chart() || w.chart() != b.chart()) throw structural_error("chart mismatch in koszul bracket");
    Multivector sa = sharp(w, a);
    Multivector sb = sharp(w, b);
    OneForm r = lie_derivative(sa, b) - lie_derivative(sb, a) - OneForm::differential(bivector_eval(w, a, b));
    return r;
}

RatFunc poisson_bracket(const Multivector& w, const RatFunc& f, const RatFunc& g) {
    if (w.degree() != 2) throw structural_error("poisson bracket needs a bivector");
    return bivector_eval(w, OneForm::differential(f), OneForm::differential(g));
}

Multivector lichnerowicz_coboundary(const Multivector& w, const Multivector& Q) {
    return -schouten_bracket(w, Q);
}

} // namespace plift

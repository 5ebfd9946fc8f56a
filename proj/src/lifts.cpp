#include "plift/lifts.hpp"

namespace plift {

RatFunc iota(const SymCovariant& G) {
    ChartPtr tc = G.chart()->tangent();
    int n = G.chart()->arity();
    RatFunc acc = RatFunc::zero(tc);
    for (const auto& [e, v] : G.iota_coefficients()) {
        Poly mono(tc);
        Exponents ext(static_cast<size_t>(tc->arity()), 0u);
        for (int i = 0; i < n; ++i) ext[static_cast<size_t>(n + i)] = e[static_cast<size_t>(i)];
        mono.add_term(ext, Scalar(1));
        acc += v.lift_to_tangent() * RatFunc(mono);
    }
    return acc;
}

RatFunc iota(const OneForm& a) { return iota(a.as_sym()); }

SymCovariant iota_inverse(const RatFunc& F) {
    ChartPtr tc = F.chart();
    if (!tc->is_tangent()) throw structural_error("iota_inverse expects a tangent-chart function");
    ChartPtr base = tc->base();
    int n = base->arity();
    for (int i = 0; i < n; ++i)
        if (F.den().depends_on(n + i)) throw structural_error("iota_inverse: denominator depends on fiber variables");

    std::map<Exponents, Poly> groups;
    long degree = -1;
    for (const auto& [e, c] : F.num().terms()) {
        Exponents fiber(static_cast<size_t>(n), 0u);
        Exponents base_part(static_cast<size_t>(tc->arity()), 0u);
        uint32_t d = 0;
        for (int i = 0; i < tc->arity(); ++i) {
            if (i >= n) {
                fiber[static_cast<size_t>(i - n)] = e[static_cast<size_t>(i)];
                d += e[static_cast<size_t>(i)];
            } else {
                base_part[static_cast<size_t>(i)] = e[static_cast<size_t>(i)];
            }
        }
        if (degree < 0) degree = d;
        if (static_cast<long>(d) != degree)
            throw structural_error("iota_inverse: polynomial is not fiberwise homogeneous");
        auto it = groups.find(fiber);
        if (it == groups.end()) it = groups.emplace(fiber, Poly(tc)).first;
        it->second.add_term(base_part, c);
    }
    if (degree < 0) degree = 0; // zero input: the degree-0 zero tensor

    std::map<Exponents, RatFunc> coeffs;
    for (const auto& [fiber, num] : groups) coeffs.emplace(fiber, RatFunc(num, F.den()).drop_to_base());
    return SymCovariant::from_iota_coefficients(base, static_cast<int>(degree), coeffs);
}

RatFunc vertical_lift(const RatFunc& f) { return f.lift_to_tangent(); }

Multivector vertical_lift(const Multivector& P) {
    ChartPtr tc = P.chart()->tangent();
    int n = P.chart()->arity();
    Multivector r(tc, P.degree());
    for (const auto& [t, v] : P.components()) {
        IndexTuple s(t);
        for (auto& i : s) i += n;
        r.set_component(s, v.lift_to_tangent());
    }
    return r;
}

RatFunc complete_lift(const RatFunc& f) {
    ChartPtr tc = f.chart()->tangent();
    int n = f.chart()->arity();
    RatFunc lifted = f.lift_to_tangent();
    RatFunc acc = RatFunc::zero(tc);
    for (int k = 0; k < n; ++k) acc += RatFunc::variable(tc, n + k) * lifted.derivative(k);
    return acc;
}

Multivector complete_lift(const Multivector& P) {
    ChartPtr tc = P.chart()->tangent();
    int n = P.chart()->arity();
    Multivector r(tc, P.degree());
    for (const auto& [t, v] : P.components()) {
        // (c dx_{t_1}^...)^C = c^C (basis)^V + c^V sum_l (basis with slot l complete-lifted)
        RatFunc cC = complete_lift(v);
        if (!cC.is_zero()) {
            IndexTuple s(t);
            for (auto& i : s) i += n;
            r.add_full(s, cC);
        }
        RatFunc cV = v.lift_to_tangent();
        for (size_t l = 0; l < t.size(); ++l) {
            IndexTuple s(t);
            for (size_t j = 0; j < s.size(); ++j)
                if (j != l) s[j] += n;
            r.add_full(s, cV);
        }
    }
    return r;
}

Multivector euler_field(const ChartPtr& tangent_chart) {
    if (!tangent_chart->is_tangent()) throw structural_error("euler field lives on a tangent chart");
    int n = tangent_chart->base_dim();
    Multivector E(tangent_chart, 1);
    for (int i = 0; i < n; ++i) E.set_component({n + i}, RatFunc::variable(tangent_chart, n + i));
    return E;
}

Semispray::Semispray(Multivector field) : field_(std::move(field)) {
    if (field_.degree() != 1) throw structural_error("semispray must be a vector field");
    const ChartPtr& tc = field_.chart();
    if (!tc->is_tangent()) throw structural_error("semispray lives on a tangent chart");
    int n = tc->base_dim();
    for (int i = 0; i < n; ++i)
        if (field_.component({i}) != RatFunc::variable(tc, n + i))
            throw structural_error("semispray x-components must equal the fiber coordinates");
}

Semispray geodesic_spray(const LinearConnection& C) {
    ChartPtr tc = C.chart()->tangent();
    int n = C.dim();
    Multivector S(tc, 1);
    for (int i = 0; i < n; ++i) S.set_component({i}, RatFunc::variable(tc, n + i));
    for (int j = 0; j < n; ++j) {
        RatFunc acc = RatFunc::zero(tc);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const RatFunc& g = C.gamma(j, i, k);
                if (g.is_zero()) continue;
                acc -= RatFunc::variable(tc, n + i) * RatFunc::variable(tc, n + k) * g.lift_to_tangent();
            }
        if (!acc.is_zero()) S.set_component({n + j}, acc);
    }
    return Semispray(std::move(S));
}

Multivector horizontal_lift_bivector(const Multivector& w, const NonlinearConnection& N) {
    if (w.degree() != 2) throw structural_error("horizontal lift expects a bivector");
    if (w.chart() != N.chart()->base()) throw structural_error("bivector and connection charts do not match");
    Multivector r(N.chart(), 2);
    for (const auto& [t, v] : w.components()) {
        Multivector di = N.horizontal_frame(t[0]);
        Multivector dj = N.horizontal_frame(t[1]);
        r += wedge(di, dj) * v.lift_to_tangent();
    }
    return r;
}

SymCovariant sym_nabla(const LinearConnection& C, const SymCovariant& H) {
    if (C.chart() != H.chart()) throw structural_error("chart mismatch in sym_nabla");
    int n = C.dim();
    int k = H.degree();
    std::vector<SymCovariant> slots;
    slots.reserve(static_cast<size_t>(n));
    for (int a = 0; a < n; ++a) slots.push_back(nabla_slot(C, H, a));
    SymCovariant out(H.chart(), k + 1);
    RatFunc inv(H.chart(), Scalar(1, k + 1));
    for (const auto& t : nondecreasing_tuples(n, k + 1)) {
        RatFunc acc = RatFunc::zero(H.chart());
        for (size_t l = 0; l < t.size(); ++l) {
            IndexTuple rest;
            rest.reserve(t.size() - 1);
            for (size_t j = 0; j < t.size(); ++j)
                if (j != l) rest.push_back(t[j]);
            acc += slots[static_cast<size_t>(t[l])].full_component(rest);
        }
        if (!acc.is_zero()) out.add_sorted(t, acc * inv);
    }
    return out;
}

Multivector graded_nabla_lift_closed_form(const Multivector& w, const LinearConnection& C) {
    ChartPtr tc = C.chart()->tangent();
    int n = C.dim();
    auto y = [&](int i) { return RatFunc::variable(tc, n + i); };
    auto lift = [&](const RatFunc& f) { return f.lift_to_tangent(); };
    auto wf = [&](int i, int j) { return w.full_component({i, j}); };

    Multivector W(tc, 2);
    // Base block (1/2) w^{ij} dx_i ^ dx_j.
    for (const auto& [t, v] : w.components()) W.add_full({t[0], t[1]}, lift(v));
    // Mixed block -y^a w^{ik} Gamma^j_{ka} dx_i ^ dy_j (full sums).
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            RatFunc acc = RatFunc::zero(tc);
            for (int a = 0; a < n; ++a)
                for (int k = 0; k < n; ++k) {
                    RatFunc term = wf(i, k) * C.gamma(j, k, a);
                    if (!term.is_zero()) acc -= y(a) * lift(term);
                }
            if (!acc.is_zero()) W.add_full({i, n + j}, acc);
        }
    // Fiber block -(1/4) y^a y^b (...) dy_i ^ dy_j (full sums).
    RatFunc quarter(tc, Scalar(1, 4));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            RatFunc acc = RatFunc::zero(tc);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    RatFunc inner = wf(i, j).derivative(a).derivative(b);
                    for (int k = 0; k < n; ++k) {
                        inner -= wf(i, j).derivative(k) * C.gamma(k, a, b);
                        inner += wf(k, j) * C.gamma(i, a, b).derivative(k);
                        inner -= wf(k, i) * C.gamma(j, a, b).derivative(k);
                        inner += Scalar(2) * wf(k, j).derivative(b) * C.gamma(i, k, a);
                        inner -= Scalar(2) * wf(k, i).derivative(b) * C.gamma(j, k, a);
                    }
                    if (!inner.is_zero()) acc += y(a) * y(b) * lift(inner);
                }
            if (!acc.is_zero()) W.add_full({n + i, n + j}, -(acc * quarter));
        }
    return W;
}

Multivector graded_nabla_lift(const Multivector& w, const LinearConnection& C) {
    if (w.degree() != 2) throw structural_error("graded nabla-lift expects a bivector");
    if (w.chart() != C.chart()) throw structural_error("chart mismatch in graded nabla-lift");
    if (!C.torsion_free()) throw structural_error("graded nabla-lift requires a torsion-free connection");
    Semispray S = geodesic_spray(C);
    Multivector wc = complete_lift(w);
    Multivector W = lie_derivative(S.field(), wc) * Scalar(-1, 2);
    Multivector closed = graded_nabla_lift_closed_form(w, C);
    if (W != closed)
        throw arithmetic_error("graded nabla-lift: operator form and closed form disagree");
    return W;
}

} // namespace plift

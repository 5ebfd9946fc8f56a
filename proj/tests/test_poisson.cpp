#include <doctest.h>

#include "helpers.hpp"
#include "plift/model.hpp"
#include "plift/scenario.hpp"

using namespace plift;
using namespace plift::testing;

namespace {

Multivector scenario_bivector(const std::string& name) {
    Model m = scenario(name);
    return std::get<Multivector>(m.require("w").data);
}

Multivector so3() { return scenario_bivector("so3"); }
Multivector symplectic2() { return scenario_bivector("symplectic2"); }

// Non-Poisson control on R^3.
Multivector non_poisson3() {
    Model m = scenario("zero3");
    ChartPtr c = m.chart("M");
    Multivector w(c, 2);
    w.set_component({0, 1}, RatFunc::variable(c, 0)); // x1 d1^d2
    w.set_component({0, 2}, RatFunc::one(c));         // d1^d3
    return w;
}

LinearConnection curved_conn2(const ChartPtr& c) {
    LinearConnection C(c);
    C.set_gamma(0, 0, 0, RatFunc::variable(c, 1)); // Gamma^1_{11} = x2
    return C;
}

// Hamiltonian field on TM per the explicit block expansion of the complete
// lift: dF/dy^k w^{ki} dx_i + (dF/dx^k w^{ki} + dF/dy^k y^h d_h w^{ki}) dy_i.
Multivector hamiltonian_tm_oracle(const Multivector& w, const RatFunc& F) {
    ChartPtr tc = F.chart();
    int n = tc->base_dim();
    Multivector X(tc, 1);
    for (int i = 0; i < n; ++i) {
        RatFunc cx = RatFunc::zero(tc), cy = RatFunc::zero(tc);
        for (int k = 0; k < n; ++k) {
            RatFunc wki = w.full_component({k, i}).lift_to_tangent();
            if (wki.is_zero()) continue;
            cx += F.derivative(n + k) * wki;
            cy += F.derivative(k) * wki;
        }
        for (int k = 0; k < n; ++k)
            for (int h = 0; h < n; ++h) {
                RatFunc d = w.full_component({k, i}).derivative(h).lift_to_tangent();
                if (d.is_zero()) continue;
                cy += F.derivative(n + k) * RatFunc::variable(tc, n + h) * d;
            }
        if (!cx.is_zero()) X.add_full({i}, cx);
        if (!cy.is_zero()) X.add_full({n + i}, cy);
    }
    return X;
}

} // namespace

TEST_CASE("is_poisson") {
    SUBCASE("so3 passes") { CHECK(is_poisson(so3()).pass); }
    SUBCASE("zero bivector passes") { CHECK(is_poisson(scenario_bivector("zero3")).pass); }
    SUBCASE("all library scenarios pass") {
        for (const std::string name : {"so3", "symplectic2", "symplectic4", "heisenberg", "zero3", "random-linear(0)",
                                       "random-linear(1)", "random-linear(2)", "random-linear(3)", "random-linear(4)"})
            CHECK(is_poisson(scenario_bivector(name)).pass);
    }
    SUBCASE("mixed linear example checked against the cyclic-sum oracle") {
        Model m = scenario("zero3");
        ChartPtr c = m.chart("M");
        Multivector w(c, 2);
        w.set_component({0, 1}, RatFunc::variable(c, 0));
        w.set_component({1, 2}, RatFunc::one(c));
        CheckResult r = is_poisson(w);
        bool oracle = true;
        for (int i = 0; i < 3 && oracle; ++i)
            for (int j = 0; j < 3 && oracle; ++j)
                for (int k = 0; k < 3 && oracle; ++k) {
                    RatFunc acc =
                        poisson_bracket(w, poisson_bracket(w, RatFunc::variable(c, i), RatFunc::variable(c, j)),
                                        RatFunc::variable(c, k)) +
                        poisson_bracket(w, poisson_bracket(w, RatFunc::variable(c, j), RatFunc::variable(c, k)),
                                        RatFunc::variable(c, i)) +
                        poisson_bracket(w, poisson_bracket(w, RatFunc::variable(c, k), RatFunc::variable(c, i)),
                                        RatFunc::variable(c, j));
                    oracle = acc.is_zero();
                }
        CHECK(r.pass == oracle);
    }
    SUBCASE("failure carries a witness") {
        CheckResult r = is_poisson(non_poisson3());
        CHECK_FALSE(r.pass);
        REQUIRE(r.witness.has_value());
        CHECK_FALSE(r.witness->value.is_zero());
    }
}

TEST_CASE("hamiltonian fields") {
    SUBCASE("matches sharp of the differential") {
        Multivector w = symplectic2();
        ChartPtr c = w.chart();
        Multivector X = hamiltonian_field(w, RatFunc::variable(c, 0));
        CHECK(X == Multivector::basis_vector(c, 1));
        CHECK(X == sharp(w, OneForm::differential(RatFunc::variable(c, 0))));
    }
    SUBCASE("Leibniz") {
        Multivector w = so3();
        ChartPtr c = w.chart();
        Rng rng(3);
        for (int i = 0; i < 6; ++i) {
            RatFunc f = RatFunc(random_poly(c, rng, 2)), g = RatFunc(random_poly(c, rng, 2));
            CHECK(hamiltonian_field(w, f * g) ==
                  hamiltonian_field(w, g) * f + hamiltonian_field(w, f) * g);
        }
    }
    SUBCASE("complete lift matches the explicit tangent-space expansion") {
        Multivector w = so3();
        Multivector wc = complete_lift(w);
        ChartPtr tc = wc.chart();
        CHECK(hamiltonian_field(wc, RatFunc::variable(tc, 3)) ==
              hamiltonian_tm_oracle(w, RatFunc::variable(tc, 3)));
        Rng rng(5);
        for (int rep = 0; rep < 5; ++rep) {
            RatFunc F = RatFunc(random_poly(tc, rng, 2));
            CHECK(hamiltonian_field(wc, F) == hamiltonian_tm_oracle(w, F));
        }
    }
}

TEST_CASE("modular fields") {
    SUBCASE("constant symplectic with unit volume is unimodular") {
        Multivector w = symplectic2();
        VolumeForm mu(w.chart(), RatFunc::one(w.chart()));
        CHECK(modular_field(w, mu).is_zero());
    }
    SUBCASE("so3 with unit volume, verified by the divergence property") {
        Multivector w = so3();
        ChartPtr c = w.chart();
        VolumeForm mu(c, RatFunc::one(c));
        Multivector delta = modular_field(w, mu);
        CHECK(delta.is_zero());
        for (int i = 0; i < 3; ++i) {
            RatFunc f = RatFunc::variable(c, i);
            CHECK(lie_derivative(delta, f) == divergence(hamiltonian_field(w, f), mu));
        }
    }
    SUBCASE("defining property against nontrivial densities") {
        Multivector w = so3();
        ChartPtr c = w.chart();
        Rng rng(7);
        for (int rep = 0; rep < 4; ++rep) {
            Poly d = random_nonzero_poly(c, rng, 1, 2);
            VolumeForm mu(c, RatFunc(d * d) + RatFunc::one(c)); // strictly nonzero density
            Multivector delta = modular_field(w, mu);
            for (int i = 0; i < 3; ++i) {
                RatFunc f = RatFunc::variable(c, i);
                CHECK(lie_derivative(delta, f) == divergence(hamiltonian_field(w, f), mu));
            }
            // The modular field is a 1-cocycle.
            CHECK(lichnerowicz_coboundary(w, delta).is_zero());
        }
    }
    SUBCASE("sasaki volume densities") {
        ChartPtr c = symplectic2().chart();
        Metric id(c);
        id.set_g(0, 0, RatFunc::one(c));
        id.set_g(1, 1, RatFunc::one(c));
        CHECK(sasaki_volume(id).density() == RatFunc::one(c->tangent()));
        Metric g(c);
        g.set_g(0, 0, RatFunc::one(c));
        g.set_g(1, 1, RatFunc::one(c) + RatFunc::variable(c, 0) * RatFunc::variable(c, 0));
        CHECK(sasaki_volume(g).density() ==
              RatFunc::one(c->tangent()) + RatFunc::variable(c->tangent(), 0) * RatFunc::variable(c->tangent(), 0));
        CHECK_FALSE(sasaki_volume(g).sqrt_mode());
        CHECK(riemannian_volume(g).sqrt_mode());
    }
    SUBCASE("tangent modular field doubles the vertical lift") {
        {
            Multivector w = so3();
            ChartPtr c = w.chart();
            Metric id(c);
            for (int i = 0; i < 3; ++i) id.set_g(i, i, RatFunc::one(c));
            Multivector lhs = modular_field(complete_lift(w), sasaki_volume(id));
            Multivector rhs = vertical_lift(modular_field(w, riemannian_volume(id))) * Scalar(2);
            CHECK(lhs == rhs);
        }
        {
            Multivector w = symplectic2();
            ChartPtr c = w.chart();
            Metric g(c);
            g.set_g(0, 0, RatFunc::one(c));
            g.set_g(1, 1, RatFunc::one(c) + RatFunc::variable(c, 0) * RatFunc::variable(c, 0));
            Multivector lhs = modular_field(complete_lift(w), sasaki_volume(g));
            Multivector rhs = vertical_lift(modular_field(w, riemannian_volume(g))) * Scalar(2);
            CHECK(lhs == rhs);
            CHECK_FALSE(rhs.is_zero());
        }
    }
}

TEST_CASE("transversal Poisson structures") {
    SUBCASE("graded shapes with Poisson base pass") {
        Multivector w = so3();
        LinearConnection flat(w.chart());
        Multivector W = graded_nabla_lift(w, flat);
        Report rep = is_transversal_poisson(W, vertical_foliation(W.chart()));
        CHECK(rep.all_pass());
    }
    SUBCASE("y-dependent base block fails with a witness") {
        ChartPtr tc = so3().chart()->tangent();
        Multivector W(tc, 2);
        W.set_component({0, 1}, RatFunc::variable(tc, 3)); // {x,x} block depending on y
        Report rep = is_transversal_poisson(W, vertical_foliation(tc));
        CHECK_FALSE(rep.all_pass());
        bool found_witness = false;
        for (const auto& c : rep.checks)
            if (!c.pass && c.witness) found_witness = true;
        CHECK(found_witness);
    }
    SUBCASE("non-Poisson base fails the Jacobi restriction") {
        Multivector bad = non_poisson3();
        ChartPtr tc = bad.chart()->tangent();
        Multivector W(tc, 2);
        for (const auto& [t, v] : bad.components()) W.set_component(t, v.lift_to_tangent());
        Report rep = is_transversal_poisson(W, vertical_foliation(tc));
        CHECK_FALSE(rep.all_pass());
    }
}

TEST_CASE("shape analysis") {
    SUBCASE("complete lift is polynomially graded with the expected blocks") {
        Multivector w = so3();
        Multivector wc = complete_lift(w);
        GradedStructure parts = shape_analysis(wc);
        CHECK(parts.shape == Shape::poly_graded);
        CHECK(parts.base_w.is_zero());
        int n = 3;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                CHECK(parts.phi(i, j) == w.full_component({i, j}));
                for (int a = 0; a < n; ++a) {
                    CHECK(parts.a(i, j, a).is_zero());
                    CHECK(parts.chi(i, j, a) == w.full_component({i, j}).derivative(a));
                    for (int b = 0; b < n; ++b) CHECK(parts.b(i, j, a, b).is_zero());
                }
                CHECK(parts.eta(i, j).is_zero());
            }
        CHECK(assemble_parts(parts) == wc);
    }
    SUBCASE("graded nabla lift is graded") {
        Multivector w = symplectic2();
        Rng rng(11);
        LinearConnection C = random_connection(w.chart(), rng);
        Multivector W = graded_nabla_lift(w, C);
        GradedStructure parts = shape_analysis(W);
        CHECK(parts.shape == Shape::graded);
        CHECK(parts.base_w == w);
        CHECK(assemble_parts(parts) == W);
    }
    SUBCASE("horizontal lift through a linear connection is graded") {
        Multivector w = so3();
        Rng rng(13);
        LinearConnection C = random_connection(w.chart(), rng);
        Multivector wh = horizontal_lift_bivector(w, NonlinearConnection::from_linear(C));
        GradedStructure parts = shape_analysis(wh);
        CHECK(parts.shape == Shape::graded);
        CHECK(parts.base_w == w);
        // Mixed block reproduces Gamma^{ia}_b = -w^{ij} Gamma^a_{jb}.
        for (int i = 0; i < 3; ++i)
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) {
                    RatFunc expected = RatFunc::zero(w.chart());
                    for (int j = 0; j < 3; ++j) expected -= w.full_component({i, j}) * C.gamma(a, j, b);
                    CHECK(parts.a(i, a, b) == expected);
                }
    }
    SUBCASE("quadratic base block is rejected") {
        ChartPtr tc = so3().chart()->tangent();
        Multivector W(tc, 2);
        W.set_component({0, 1}, RatFunc::variable(tc, 3) * RatFunc::variable(tc, 3));
        GradedStructure parts = shape_analysis(W);
        CHECK(parts.shape == Shape::not_graded);
        CHECK(parts.obstruction.has_value());
    }
    SUBCASE("cubic fiber block is rejected") {
        ChartPtr tc = so3().chart()->tangent();
        Multivector W(tc, 2);
        RatFunc y1 = RatFunc::variable(tc, 3);
        W.set_component({3, 4}, y1 * y1 * y1);
        CHECK(shape_analysis(W).shape == Shape::not_graded);
    }
}

TEST_CASE("contravariant connections and curvature") {
    SUBCASE("complete lift induces the zero connection, which is flat") {
        GradedStructure parts = shape_analysis(complete_lift(so3()));
        ContravariantConnection D = contravariant_connection_of(parts);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) CHECK(D.gamma(i, j, k).is_zero());
        CHECK(ContravariantCurvature(D).is_zero());
    }
    SUBCASE("flat linear connection gives a flat D") {
        Multivector w = symplectic2();
        LinearConnection flat(w.chart());
        Multivector wh = horizontal_lift_bivector(w, NonlinearConnection::from_linear(flat));
        ContravariantConnection D = contravariant_connection_of(shape_analysis(wh));
        CHECK(ContravariantCurvature(D).is_zero());
    }
    SUBCASE("curved connection with nondegenerate bivector: C_D matches the curvature contraction") {
        Multivector w = symplectic2();
        ChartPtr c = w.chart();
        LinearConnection C = curved_conn2(c);
        LinearCurvature R(C);
        Multivector wh = horizontal_lift_bivector(w, NonlinearConnection::from_linear(C));
        ContravariantConnection D = contravariant_connection_of(shape_analysis(wh));
        ContravariantCurvature CD(D);
        CHECK_FALSE(CD.is_zero());
        // C_D(dx^a, dx^b) dx^k = -(dx^k)(R(sharp dx^a, sharp dx^b) . ) exactly.
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int k = 0; k < 2; ++k) {
                    const OneForm& v = CD.comp(a, b, k);
                    for (int m = 0; m < 2; ++m) {
                        RatFunc expected = RatFunc::zero(c);
                        for (int i = 0; i < 2; ++i)
                            for (int j = 0; j < 2; ++j)
                                expected -= w.full_component({a, i}) * w.full_component({b, j}) * R.r(k, m, i, j);
                        CHECK(v.comp(m) == expected);
                    }
                }
    }
    SUBCASE("D Leibniz law") {
        Multivector w = so3();
        ChartPtr c = w.chart();
        Rng rng(17);
        LinearConnection C = random_connection(c, rng);
        Multivector wh = horizontal_lift_bivector(w, NonlinearConnection::from_linear(C));
        ContravariantConnection D = contravariant_connection_of(shape_analysis(wh));
        for (int rep = 0; rep < 5; ++rep) {
            RatFunc f = RatFunc(random_poly(c, rng, 2)), h = RatFunc(random_poly(c, rng, 1));
            OneForm alpha = random_oneform(c, rng, 1);
            CHECK(D.derive_form(f, alpha * h) ==
                  D.derive_form(f, alpha) * h + alpha * lie_derivative(hamiltonian_field(w, f), h));
        }
    }
}

TEST_CASE("psi and xi operators") {
    SUBCASE("complete-lift parts have vanishing psi") {
        Multivector w = so3();
        GradedOperators ops(shape_analysis(complete_lift(w)));
        ChartPtr c = w.chart();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) CHECK(ops.psi(OneForm::basis(c, i), OneForm::basis(c, j)).is_zero());
    }
    SUBCASE("graded nabla lift psi matches the symmetrized-derivative formula") {
        for (Multivector w : {symplectic2(), so3()}) {
            ChartPtr c = w.chart();
            Rng rng(19);
            LinearConnection C = random_connection(c, rng);
            Multivector W = graded_nabla_lift(w, C);
            GradedOperators ops(shape_analysis(W));
            AlgebroidPtr A = LieAlgebroid::cotangent(w);
            auto sbr = [&](const SymCovariant& G, const SymCovariant& H) {
                return sym_bracket(AlgebroidSymTensor::from_sym_covariant(A, G),
                                   AlgebroidSymTensor::from_sym_covariant(A, H))
                    .as_sym_covariant();
            };
            for (int rep = 0; rep < 2; ++rep) {
                OneForm alpha = random_oneform(c, rng, 1), beta = random_oneform(c, rng, 1);
                SymCovariant lhs = ops.psi(alpha, beta);
                SymCovariant rhs = (sym_nabla(C, sbr(alpha.as_sym(), beta.as_sym())) -
                                    sbr(sym_nabla(C, alpha.as_sym()), beta.as_sym()) -
                                    sbr(alpha.as_sym(), sym_nabla(C, beta.as_sym()))) *
                                   Scalar(-1, 2);
                CHECK(lhs == rhs);
            }
        }
    }
    SUBCASE("horizontal-lift psi matches the covariant-derivative pairing") {
        Multivector w = so3();
        ChartPtr c = w.chart();
        Rng rng(23);
        LinearConnection C = random_connection(c, rng);
        Multivector wh = horizontal_lift_bivector(w, NonlinearConnection::from_linear(C));
        GradedOperators ops(shape_analysis(wh));
        auto nabla_form = [&](const OneForm& alpha, int z, int i) {
            RatFunc acc = alpha.comp(i).derivative(z);
            for (int b = 0; b < 3; ++b) acc -= C.gamma(b, z, i) * alpha.comp(b);
            return acc;
        };
        for (int rep = 0; rep < 3; ++rep) {
            OneForm alpha = random_oneform(c, rng, 1), beta = random_oneform(c, rng, 1);
            SymCovariant psi = ops.psi(alpha, beta);
            SymCovariant expected(c, 2);
            for (int p = 0; p < 3; ++p)
                for (int q = p; q < 3; ++q) {
                    RatFunc acc = RatFunc::zero(c);
                    for (int z = 0; z < 3; ++z)
                        for (int k = 0; k < 3; ++k) {
                            RatFunc wzk = w.full_component({z, k});
                            if (wzk.is_zero()) continue;
                            acc += wzk * (nabla_form(alpha, z, p) * nabla_form(beta, k, q) +
                                          nabla_form(alpha, z, q) * nabla_form(beta, k, p)) *
                                   Scalar(1, 2);
                        }
                    if (!acc.is_zero()) expected.set_component({p, q}, acc);
                }
            CHECK(psi == expected);
        }
    }
    SUBCASE("horizontal-lift xi matches the cyclic covariant pairing") {
        Multivector w = so3();
        ChartPtr c = w.chart();
        Rng rng(29);
        LinearConnection C = random_connection(c, rng, 1);
        Multivector wh = horizontal_lift_bivector(w, NonlinearConnection::from_linear(C));
        GradedOperators ops(shape_analysis(wh));
        auto nabla_form = [&](const OneForm& alpha, int z, int i) {
            RatFunc acc = alpha.comp(i).derivative(z);
            for (int b = 0; b < 3; ++b) acc -= C.gamma(b, z, i) * alpha.comp(b);
            return acc;
        };
        auto nabla_sym2 = [&](const SymCovariant& G, int z, int p, int q) {
            RatFunc acc = G.full_component({p, q}).derivative(z);
            for (int b = 0; b < 3; ++b) {
                acc -= C.gamma(b, z, p) * G.full_component({b, q});
                acc -= C.gamma(b, z, q) * G.full_component({p, b});
            }
            return acc;
        };
        for (int rep = 0; rep < 2; ++rep) {
            SymCovariant G = random_sym(c, 2, rng, 1);
            OneForm gamma = random_oneform(c, rng, 1);
            SymCovariant xi = ops.xi(G, gamma);
            SymCovariant expected(c, 3);
            for (int p = 0; p < 3; ++p)
                for (int q = p; q < 3; ++q)
                    for (int r = q; r < 3; ++r) {
                        RatFunc acc = RatFunc::zero(c);
                        int trip[3][3] = {{p, q, r}, {q, r, p}, {r, p, q}};
                        for (auto& t : trip)
                            for (int z = 0; z < 3; ++z)
                                for (int k = 0; k < 3; ++k) {
                                    RatFunc wzk = w.full_component({z, k});
                                    if (wzk.is_zero()) continue;
                                    acc += wzk * nabla_sym2(G, z, t[0], t[1]) * nabla_form(gamma, k, t[2]);
                                }
                        if (!acc.is_zero()) expected.set_component({p, q, r}, acc * Scalar(1, 3));
                    }
            CHECK(xi == expected);
        }
    }
    SUBCASE("trivial lift has vanishing xi") {
        Multivector w = symplectic2();
        ChartPtr c = w.chart();
        ContravariantConnection D(w);
        Multivector W = assemble_graded(w, D, {});
        GradedOperators ops(shape_analysis(W));
        SymCovariant G = sym_product(SymCovariant::basis_form(c, 0), SymCovariant::basis_form(c, 1));
        CHECK(ops.xi(G, OneForm::basis(c, 0)).is_zero());
    }
    SUBCASE("xi rescaling law") {
        Multivector w = symplectic2();
        ChartPtr c = w.chart();
        Rng rng(31);
        LinearConnection C = random_connection(c, rng);
        Multivector W = graded_nabla_lift(w, C);
        GradedStructure parts = shape_analysis(W);
        GradedOperators ops(parts);
        ContravariantConnection D = contravariant_connection_of(parts);
        for (int rep = 0; rep < 2; ++rep) {
            SymCovariant G = random_sym(c, 2, rng, 1);
            OneForm gamma = random_oneform(c, rng, 1);
            RatFunc f = RatFunc(random_poly(c, rng, 1)), h = RatFunc(random_poly(c, rng, 1));
            SymCovariant lhs = ops.xi(G * f, gamma * h);
            SymCovariant rhs = ops.xi(G, gamma) * (f * h);
            rhs -= sym_product(D.derive_sym(h, G), gamma.as_sym()) * f;
            rhs += sym_product(G, D.derive_form(f, gamma).as_sym()) * h;
            rhs += sym_product(G, gamma.as_sym()) * poisson_bracket(w, f, h);
            CHECK(lhs == rhs);
        }
    }
    SUBCASE("d_psi vanishes for Poisson graded structures and flags broken ones") {
        {
            Multivector w = so3();
            GradedOperators ops(shape_analysis(complete_lift(w)));
            ChartPtr c = w.chart();
            CHECK(ops.d_psi(RatFunc::variable(c, 0), OneForm::basis(c, 0), OneForm::basis(c, 1)).is_zero());
        }
        {
            Multivector w = symplectic2();
            LinearConnection flat(w.chart());
            Multivector wh = horizontal_lift_bivector(w, NonlinearConnection::from_linear(flat));
            GradedOperators ops(shape_analysis(wh));
            ChartPtr c = w.chart();
            for (int f = 0; f < 2; ++f)
                CHECK(ops.d_psi(RatFunc::variable(c, f), OneForm::basis(c, 0), OneForm::basis(c, 1)).is_zero());
        }
        {
            Multivector w = symplectic2();
            ChartPtr c = w.chart();
            ContravariantConnection D(w); // zero connection, flat
            std::map<std::pair<int, int>, SymCovariant> psi;
            SymCovariant b(c, 2);
            b.set_component({0, 0}, RatFunc::variable(c, 0)); // x1 dx1.dx1
            psi[{0, 1}] = b;
            Multivector W = assemble_graded(w, D, psi);
            GradedOperators ops(shape_analysis(W));
            bool nonzero = false;
            for (int f = 0; f < 2 && !nonzero; ++f)
                nonzero = !ops.d_psi(RatFunc::variable(c, f), OneForm::basis(c, 0), OneForm::basis(c, 1)).is_zero();
            CHECK(nonzero);
        }
    }
}

TEST_CASE("graded Poisson verdicts") {
    SUBCASE("complete-lift parts: all conditions hold") {
        Multivector w = so3();
        Multivector wc = complete_lift(w);
        GradedOperators ops(shape_analysis(wc));
        Report rep = ops.check_graded_poisson();
        CHECK(rep.all_pass());
        CHECK(is_poisson(wc).pass);
    }
    SUBCASE("trivial lift of so3: graded Poisson with zero connection") {
        Multivector w = so3();
        ContravariantConnection D(w);
        Multivector W = assemble_graded(w, D, {});
        GradedOperators ops(shape_analysis(W));
        Report rep = ops.check_graded_poisson();
        CHECK(rep.all_pass());
        CHECK(is_poisson(W).pass == rep.all_pass());
    }
    SUBCASE("broken flatness: verdict false matches is_poisson false") {
        Multivector w = symplectic2();
        ChartPtr c = w.chart();
        LinearConnection C = curved_conn2(c);
        Multivector wh = horizontal_lift_bivector(w, NonlinearConnection::from_linear(C));
        GradedOperators ops(shape_analysis(wh));
        Report rep = ops.check_graded_poisson();
        CHECK_FALSE(rep.all_pass());
        bool flat_d = true;
        for (const auto& chk : rep.checks)
            if (chk.name == "flat_D") flat_d = chk.pass;
        CHECK_FALSE(flat_d);
        CHECK(is_poisson(wh).pass == rep.all_pass());
    }
    SUBCASE("broken psi block: verdict false matches is_poisson false") {
        Multivector w = symplectic2();
        ChartPtr c = w.chart();
        ContravariantConnection D(w);
        std::map<std::pair<int, int>, SymCovariant> psi;
        SymCovariant b(c, 2);
        b.set_component({0, 0}, RatFunc::variable(c, 0));
        psi[{0, 1}] = b;
        Multivector W = assemble_graded(w, D, psi);
        GradedOperators ops(shape_analysis(W));
        Report rep = ops.check_graded_poisson();
        CHECK_FALSE(rep.all_pass());
        CHECK(is_poisson(W).pass == rep.all_pass());
    }
    SUBCASE("zero structure: everything passes") {
        ChartPtr c = so3().chart();
        Multivector w(c, 2);
        ContravariantConnection D(w);
        Multivector W = assemble_graded(w, D, {});
        GradedOperators ops(shape_analysis(W));
        CHECK(ops.check_graded_poisson().all_pass());
    }
    SUBCASE("jacobi equivalences on the coordinate (co)frame") {
        std::vector<Multivector> cases;
        cases.push_back(complete_lift(so3()));
        {
            Multivector w = symplectic2();
            Rng rng(37);
            cases.push_back(graded_nabla_lift(w, random_connection(w.chart(), rng)));
            cases.push_back(horizontal_lift_bivector(w, NonlinearConnection::from_linear(curved_conn2(w.chart()))));
        }
        for (const auto& W : cases) {
            GradedStructure parts = shape_analysis(W);
            GradedOperators ops(parts);
            ChartPtr base = parts.base;
            ChartPtr tc = parts.tangent;
            int n = parts.n;
            bool jac20 = true, eq21 = true;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int f = 0; f < n; ++f) {
                        RatFunc la = iota(OneForm::basis(base, i)), lb = iota(OneForm::basis(base, j));
                        RatFunc ff = RatFunc::variable(tc, f);
                        RatFunc acc = poisson_bracket(W, poisson_bracket(W, la, lb), ff) +
                                      poisson_bracket(W, poisson_bracket(W, lb, ff), la) +
                                      poisson_bracket(W, poisson_bracket(W, ff, la), lb);
                        jac20 = jac20 && acc.is_zero();
                        eq21 = eq21 && ops.d_psi(RatFunc::variable(base, f), OneForm::basis(base, i),
                                                 OneForm::basis(base, j))
                                           .is_zero();
                    }
            CHECK(jac20 == eq21);
            bool jac23 = true, eq27 = true;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k) {
                        RatFunc la = iota(OneForm::basis(base, i)), lb = iota(OneForm::basis(base, j)),
                                lc = iota(OneForm::basis(base, k));
                        RatFunc acc = poisson_bracket(W, poisson_bracket(W, la, lb), lc) +
                                      poisson_bracket(W, poisson_bracket(W, lb, lc), la) +
                                      poisson_bracket(W, poisson_bracket(W, lc, la), lb);
                        jac23 = jac23 && acc.is_zero();
                        OneForm a = OneForm::basis(base, i), b = OneForm::basis(base, j), g = OneForm::basis(base, k);
                        SymCovariant x = ops.xi(ops.psi(a, b), g) + ops.xi(ops.psi(b, g), a) + ops.xi(ops.psi(g, a), b);
                        eq27 = eq27 && x.is_zero();
                    }
            CHECK(jac23 == eq27);
        }
    }
    SUBCASE("polynomially graded Poisson structures project") {
        Multivector w = so3();
        Rng rng(41);
        LinearConnection C = random_connection(w.chart(), rng);
        Multivector W = graded_nabla_lift(w, C);
        ChartPtr tc = W.chart();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                RatFunc lhs = poisson_bracket(W, RatFunc::variable(tc, i), RatFunc::variable(tc, j));
                RatFunc rhs =
                    poisson_bracket(w, RatFunc::variable(w.chart(), i), RatFunc::variable(w.chart(), j)).lift_to_tangent();
                CHECK(lhs == rhs);
            }
    }
    SUBCASE("linear bracket of the nabla-lift is the covariant derivative") {
        // {iota(alpha), f}_W = -iota(nabla_{X_f} alpha) on random inputs.
        Multivector w = so3();
        Rng rng(149);
        LinearConnection C = random_connection(w.chart(), rng);
        Multivector W = graded_nabla_lift(w, C);
        for (int rep = 0; rep < 5; ++rep) {
            OneForm alpha = random_oneform(w.chart(), rng, 1);
            RatFunc f = RatFunc(random_poly(w.chart(), rng, 2));
            RatFunc lhs = poisson_bracket(W, iota(alpha), f.lift_to_tangent());
            Multivector xf = hamiltonian_field(w, f);
            RatFunc rhs = -iota(nabla_covariant(C, alpha.as_sym(), xf));
            CHECK(lhs == rhs);
        }
    }
    SUBCASE("derivative identity for symmetric tensors") {
        Multivector w = so3();
        Rng rng(43);
        LinearConnection C = random_connection(w.chart(), rng);
        Multivector W = graded_nabla_lift(w, C);
        GradedStructure parts = shape_analysis(W);
        ContravariantConnection D = contravariant_connection_of(parts);
        for (int rep = 0; rep < 3; ++rep)
            for (int deg = 1; deg <= 3; ++deg) {
                SymCovariant G = random_sym(w.chart(), deg, rng, 1);
                RatFunc f = RatFunc(random_poly(w.chart(), rng, 1));
                RatFunc lhs = poisson_bracket(W, iota(G), f.lift_to_tangent());
                RatFunc rhs = -iota(D.derive_sym(f, G));
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("assembly") {
    SUBCASE("trivial lift") {
        Multivector w = so3();
        ContravariantConnection D(w);
        Multivector W = assemble_graded(w, D, {});
        Multivector expected(w.chart()->tangent(), 2);
        for (const auto& [t, v] : w.components()) expected.set_component(t, v.lift_to_tangent());
        CHECK(W == expected);
    }
    SUBCASE("round trip through parts") {
        Multivector w = symplectic2();
        Rng rng(47);
        LinearConnection C = random_connection(w.chart(), rng);
        Multivector W = graded_nabla_lift(w, C);
        GradedStructure parts = shape_analysis(W);
        ContravariantConnection D = contravariant_connection_of(parts);
        std::map<std::pair<int, int>, SymCovariant> psi;
        for (int i = 0; i < 2; ++i)
            for (int j = i + 1; j < 2; ++j) psi[{i, j}] = parts.psi_basis(i, j);
        CHECK(assemble_graded(parts.base_w, D, psi) == W);
    }
    SUBCASE("asymmetric psi basis is rejected") {
        Multivector w = symplectic2();
        ChartPtr c = w.chart();
        ContravariantConnection D(w);
        std::map<std::pair<int, int>, SymCovariant> psi;
        SymCovariant b(c, 2);
        b.set_component({0, 0}, RatFunc::one(c));
        psi[{0, 1}] = b;
        psi[{1, 0}] = b; // should be -b
        CHECK_THROWS_AS((void)assemble_graded(w, D, psi), Error);
    }
    SUBCASE("psi perturbation keeps the semi-Poisson property") {
        Multivector w = so3();
        ChartPtr c = w.chart();
        Rng rng(53);
        LinearConnection C = random_connection(c, rng);
        Multivector W0 = graded_nabla_lift(w, C);
        GradedStructure parts = shape_analysis(W0);
        ContravariantConnection D = contravariant_connection_of(parts);
        std::map<std::pair<int, int>, SymCovariant> psi;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) psi[{i, j}] = parts.psi_basis(i, j);
        psi[{0, 1}] += random_sym(c, 2, rng, 1);
        Multivector W = assemble_graded(w, D, psi);
        Report rep = is_transversal_poisson(W, vertical_foliation(W.chart()));
        CHECK(rep.all_pass());
        GradedStructure reparts = shape_analysis(W);
        CHECK(reparts.shape == Shape::graded);
        CHECK(reparts.base_w == w);
    }
}

TEST_CASE("horizontal Poisson conditions") {
    SUBCASE("flat connection with a Poisson base") {
        Multivector w = so3();
        NonlinearConnection N(w.chart()->tangent());
        Report rep = horizontal_poisson_condition(w, N);
        CHECK(rep.all_pass());
        CHECK(is_poisson(horizontal_lift_bivector(w, N)).pass);
    }
    SUBCASE("curved connection with a symplectic base fails") {
        Multivector w = symplectic2();
        NonlinearConnection N = NonlinearConnection::from_linear(curved_conn2(w.chart()));
        Report rep = horizontal_poisson_condition(w, N);
        bool verdict = true;
        for (const auto& c : rep.checks)
            if (c.name == "verdict") verdict = c.pass;
        CHECK_FALSE(verdict);
        CHECK(is_poisson(horizontal_lift_bivector(w, N)).pass == verdict);
        for (const auto& c : rep.checks)
            if (c.name == "bracket_decomposition") CHECK(c.pass);
    }
    SUBCASE("kernel-aligned curvature keeps so3 horizontal lifts Poisson") {
        Multivector w = so3();
        ChartPtr tc = w.chart()->tangent();
        auto x = [&](int i) { return RatFunc::variable(tc, i); };
        NonlinearConnection N(tc);
        N.set_gamma(0, 1, -(x(0) * x(1)));
        N.set_gamma(0, 2, -(x(0) * x(2)));
        N.set_gamma(1, 1, x(0) * x(0) * Scalar(1, 2));
        N.set_gamma(1, 2, -(x(1) * x(2)));
        N.set_gamma(2, 0, -(x(0) * x(2)));
        N.set_gamma(2, 2, x(1) * x(1) * Scalar(1, 2));
        CHECK_FALSE(NonlinearCurvature(N).is_zero());
        Report rep = horizontal_poisson_condition(w, N);
        CHECK(rep.all_pass());
        CHECK(is_poisson(horizontal_lift_bivector(w, N)).pass);
    }
    SUBCASE("flat connection with a non-Poisson base fails") {
        Multivector w = non_poisson3();
        NonlinearConnection N(w.chart()->tangent());
        Report rep = horizontal_poisson_condition(w, N);
        bool verdict = true;
        for (const auto& c : rep.checks)
            if (c.name == "verdict") verdict = c.pass;
        CHECK_FALSE(verdict);
        CHECK(is_poisson(horizontal_lift_bivector(w, N)).pass == verdict);
    }
}

TEST_CASE("compatibility with the complete lift") {
    SUBCASE("flat connection, constant and linear bivectors") {
        for (Multivector w : {symplectic2(), so3()}) {
            LinearConnection flat(w.chart());
            Multivector wh = horizontal_lift_bivector(w, NonlinearConnection::from_linear(flat));
            Multivector wc = complete_lift(w);
            CHECK(compatibility_check(wh, wc).pass);
            CHECK(NablaSquaredBivector(flat, w).is_zero());
            CHECK(is_poisson(wh + wc).pass);
        }
    }
    SUBCASE("curved counterexample fails all three tests") {
        Multivector w = symplectic2();
        ChartPtr c = w.chart();
        LinearConnection C(c);
        C.set_gamma(0, 0, 1, RatFunc::variable(c, 0)); // Gamma^1_{12} = x1
        Multivector wh = horizontal_lift_bivector(w, NonlinearConnection::from_linear(C));
        Multivector wc = complete_lift(w);
        CHECK_FALSE(compatibility_check(wh, wc).pass);
        NablaSquaredBivector n2(C, w);
        bool interior_zero = true;
        for (int f = 0; f < 2 && interior_zero; ++f) {
            Multivector xf = hamiltonian_field(w, RatFunc::variable(c, f));
            for (int i = 0; i < 2 && interior_zero; ++i)
                for (int j = 0; j < 2 && interior_zero; ++j)
                    for (int b = 0; b < 2 && interior_zero; ++b) {
                        RatFunc acc = RatFunc::zero(c);
                        for (int a = 0; a < 2; ++a) acc += xf.component({a}) * n2.comp(i, j, a, b);
                        interior_zero = acc.is_zero();
                    }
        }
        CHECK_FALSE(interior_zero);
        CHECK_FALSE(is_poisson(wh + wc).pass);
    }
    SUBCASE("auxiliary bracket expression shares the vanishing pattern of nabla-squared") {
        // For torsion-free connections the mixed-bracket obstruction
        //   w^{hi} (delta a^{jk}/delta x^h - a^{lj} dGamma^k_h/dy^l
        //           + a^{lk} dGamma^j_h/dy^l),
        // with a^{jk} = y^c d_c w^{jk} + Gamma^j_l w^{lk} - Gamma^k_l w^{lj},
        // vanishes exactly when the Hamiltonian contraction of nabla^2 w does.
        Rng rng(151);
        for (Multivector w : {symplectic2(), so3()}) {
            ChartPtr c = w.chart();
            int n = c->arity();
            ChartPtr tc = c->tangent();
            for (int rep = 0; rep < 3; ++rep) {
                LinearConnection C = rep == 0 ? LinearConnection(c) : random_connection(c, rng, 1);
                NonlinearConnection N = NonlinearConnection::from_linear(C);
                auto a_aux = [&](int j, int k) {
                    RatFunc acc = RatFunc::zero(tc);
                    for (int cc = 0; cc < n; ++cc)
                        acc += RatFunc::variable(tc, n + cc) * w.full_component({j, k}).derivative(cc).lift_to_tangent();
                    for (int l = 0; l < n; ++l) {
                        acc += N.gamma(j, l) * w.full_component({l, k}).lift_to_tangent();
                        acc -= N.gamma(k, l) * w.full_component({l, j}).lift_to_tangent();
                    }
                    return acc;
                };
                bool aux_zero = true;
                for (int i = 0; i < n && aux_zero; ++i)
                    for (int j = 0; j < n && aux_zero; ++j)
                        for (int k = 0; k < n && aux_zero; ++k) {
                            RatFunc acc = RatFunc::zero(tc);
                            for (int h = 0; h < n; ++h) {
                                RatFunc whi = w.full_component({h, i}).lift_to_tangent();
                                if (whi.is_zero()) continue;
                                RatFunc inner = N.delta(a_aux(j, k), h);
                                for (int l = 0; l < n; ++l) {
                                    inner -= a_aux(l, j) * N.gamma(k, h).derivative(n + l);
                                    inner += a_aux(l, k) * N.gamma(j, h).derivative(n + l);
                                }
                                acc += whi * inner;
                            }
                            aux_zero = acc.is_zero();
                        }
                NablaSquaredBivector n2(C, w);
                bool interior_zero = true;
                for (int f = 0; f < n && interior_zero; ++f) {
                    Multivector xf = hamiltonian_field(w, RatFunc::variable(c, f));
                    for (int i = 0; i < n && interior_zero; ++i)
                        for (int j = 0; j < n && interior_zero; ++j)
                            for (int b = 0; b < n && interior_zero; ++b) {
                                RatFunc acc = RatFunc::zero(c);
                                for (int a = 0; a < n; ++a) acc += xf.component({a}) * n2.comp(i, j, a, b);
                                interior_zero = acc.is_zero();
                            }
                }
                CHECK(aux_zero == interior_zero);
            }
        }
    }
    SUBCASE("flat nontrivial connection: both conditions hold together") {
        Multivector w = symplectic2();
        ChartPtr c = w.chart();
        LinearConnection F(c);
        F.set_gamma(0, 0, 0, RatFunc(c, Scalar(1)));
        CHECK(LinearCurvature(F).is_zero());
        Multivector wh = horizontal_lift_bivector(w, NonlinearConnection::from_linear(F));
        Multivector wc = complete_lift(w);
        NablaSquaredBivector n2(F, w);
        bool interior_zero = true;
        for (int f = 0; f < 2 && interior_zero; ++f) {
            Multivector xf = hamiltonian_field(w, RatFunc::variable(c, f));
            for (int i = 0; i < 2 && interior_zero; ++i)
                for (int j = 0; j < 2 && interior_zero; ++j)
                    for (int b = 0; b < 2 && interior_zero; ++b) {
                        RatFunc acc = RatFunc::zero(c);
                        for (int a = 0; a < 2; ++a) acc += xf.component({a}) * n2.comp(i, j, a, b);
                        interior_zero = acc.is_zero();
                    }
        }
        CHECK(compatibility_check(wh, wc).pass == interior_zero);
    }
}

TEST_CASE("hamiltonian semisprays") {
    CHECK(hamiltonian_semispray_exists(symplectic2()));
    CHECK_FALSE(hamiltonian_semispray_exists(so3()));
    {
        ChartPtr c = symplectic2().chart();
        Multivector w(c, 2);
        w.set_component({0, 1}, RatFunc::variable(c, 0)); // x1 d1^d2: det = x1^2 != 0
        CHECK(hamiltonian_semispray_exists(w));
    }
    CHECK_FALSE(hamiltonian_semispray_exists(scenario_bivector("zero3")));
}

TEST_CASE("coboundary lift identity") {
    Multivector w = so3();
    ChartPtr c = w.chart();
    Rng rng(59);
    SUBCASE("vector fields") {
        for (int rep = 0; rep < 4; ++rep) CHECK(lift_coboundary_identity(w, random_vector_field(c, rng, 1)));
    }
    SUBCASE("the bivector itself") { CHECK(lift_coboundary_identity(w, w)); }
    SUBCASE("random bivectors over the symplectic scenario") {
        Multivector s = symplectic2();
        for (int rep = 0; rep < 4; ++rep) CHECK(lift_coboundary_identity(s, random_multivector(s.chart(), 2, rng, 1)));
    }
}

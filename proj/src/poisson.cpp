#include "plift/poisson_ops.hpp"

#include <sstream>

#include "plift/parallel.hpp"

namespace plift {

std::string Witness::str() const {
    std::string s = "[";
    for (size_t i = 0; i < indices.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(indices[i] + 1);
    }
    return s + "] = " + value.str();
}

std::string CheckResult::line() const {
    std::string s = name + ": " + (pass ? "PASS" : "FAIL");
    if (!pass && witness) s += " [witness: " + witness->str() + "]";
    return s;
}

bool Report::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string Report::str() const {
    std::string s;
    for (const auto& c : checks) s += c.line() + "\n";
    return s;
}

std::optional<Witness> first_nonzero(const Multivector& P) {
    if (P.is_zero()) return std::nullopt;
    const auto& [t, v] = *P.components().begin();
    return Witness{t, v};
}

CheckResult is_poisson(const Multivector& P) {
    if (P.degree() != 2) throw structural_error("is_poisson expects a bivector");
    Multivector br = schouten_bracket(P, P);
    CheckResult r;
    r.name = "poisson";
    r.pass = br.is_zero();
    r.witness = first_nonzero(br);
    return r;
}

Multivector hamiltonian_field(const Multivector& P, const RatFunc& f) {
    if (P.degree() != 2) throw structural_error("hamiltonian field needs a bivector");
    return sharp(P, OneForm::differential(f));
}

Multivector modular_field(const Multivector& P, const VolumeForm& mu) {
    if (P.degree() != 2) throw structural_error("modular field needs a bivector");
    if (P.chart() != mu.chart()) throw structural_error("chart mismatch in modular field");
    int n = P.chart()->arity();
    Multivector delta(P.chart(), 1);
    for (int i = 0; i < n; ++i) {
        RatFunc acc = RatFunc::zero(P.chart());
        for (int k = 0; k < n; ++k) {
            RatFunc pik = P.full_component({i, k});
            if (pik.is_zero()) continue;
            acc += pik.derivative(k) + pik * mu.dlog(k);
        }
        if (!acc.is_zero()) delta.set_component({i}, acc);
    }
    return delta;
}

VolumeForm sasaki_volume(const Metric& g) {
    RatFunc det = g.determinant();
    if (det.is_zero()) throw arithmetic_error("degenerate metric");
    return VolumeForm(g.chart()->tangent(), det.lift_to_tangent(), false);
}

VolumeForm riemannian_volume(const Metric& g) {
    RatFunc det = g.determinant();
    if (det.is_zero()) throw arithmetic_error("degenerate metric");
    return VolumeForm(g.chart(), det, true);
}

std::vector<int> vertical_foliation(const ChartPtr& tangent_chart) {
    if (!tangent_chart->is_tangent()) throw structural_error("vertical foliation needs a tangent chart");
    std::vector<int> slots;
    for (int i = 0; i < tangent_chart->base_dim(); ++i) slots.push_back(tangent_chart->base_dim() + i);
    return slots;
}

namespace {

// Restricts a multivector to components whose indices all avoid the foliation
// slots (evaluation on Ann TF).
Multivector restrict_transversal(const Multivector& P, const std::vector<bool>& in_foliation) {
    Multivector r(P.chart(), P.degree());
    for (const auto& [t, v] : P.components()) {
        bool keep = true;
        for (int i : t)
            if (in_foliation[static_cast<size_t>(i)]) {
                keep = false;
                break;
            }
        if (keep) r.set_component(t, v);
    }
    return r;
}

} // namespace

Report is_transversal_poisson(const Multivector& P, const std::vector<int>& foliation_slots) {
    if (P.degree() != 2) throw structural_error("transversal-Poisson test expects a bivector");
    std::vector<bool> in_fol(static_cast<size_t>(P.chart()->arity()), false);
    for (int s : foliation_slots) {
        if (s < 0 || s >= P.chart()->arity()) throw structural_error("foliation index out of range");
        in_fol[static_cast<size_t>(s)] = true;
    }
    Report rep;
    for (int s : foliation_slots) {
        Multivector Y = Multivector::basis_vector(P.chart(), s);
        Multivector L = restrict_transversal(lie_derivative(Y, P), in_fol);
        CheckResult c;
        c.name = "lie_restriction[" + P.chart()->var_name(s) + "]";
        c.pass = L.is_zero();
        c.witness = first_nonzero(L);
        rep.checks.push_back(std::move(c));
    }
    Multivector J = restrict_transversal(schouten_bracket(P, P), in_fol);
    CheckResult c;
    c.name = "jacobi_restriction";
    c.pass = J.is_zero();
    c.witness = first_nonzero(J);
    rep.checks.push_back(std::move(c));
    return rep;
}

// ------------------------------------------------------------ GradedStructure

std::string shape_name(Shape s) {
    switch (s) {
        case Shape::not_graded: return "not-graded";
        case Shape::poly_graded: return "poly-graded";
        case Shape::graded: return "graded";
    }
    return "?";
}

size_t GradedStructure::idx2(int i, int j) const {
    return static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j);
}
size_t GradedStructure::idx3(int i, int j, int k) const {
    return idx2(i, j) * static_cast<size_t>(n) + static_cast<size_t>(k);
}
size_t GradedStructure::idx4(int i, int j, int p, int q) const {
    return idx3(i, j, p) * static_cast<size_t>(n) + static_cast<size_t>(q);
}

void GradedStructure::allocate() {
    size_t n2 = static_cast<size_t>(n) * static_cast<size_t>(n);
    RatFunc z = RatFunc::zero(base);
    A_.assign(n2 * static_cast<size_t>(n), z);
    B_.assign(n2 * n2, z);
    phi_.assign(n2, z);
    eta_.assign(n2, z);
    chi_.assign(n2 * static_cast<size_t>(n), z);
}

bool GradedStructure::poly_extras_vanish() const {
    for (const auto& v : phi_)
        if (!v.is_zero()) return false;
    for (const auto& v : eta_)
        if (!v.is_zero()) return false;
    for (const auto& v : chi_)
        if (!v.is_zero()) return false;
    return true;
}

SymCovariant GradedStructure::psi_basis(int i, int j) const {
    SymCovariant g(base, 2);
    for (int p = 0; p < n; ++p)
        for (int q = p; q < n; ++q) g.set_component({p, q}, b(i, j, p, q));
    return g;
}

namespace {

// Splits a rational function on TM by fiber degree up to max_deg; returns
// false when the denominator involves fiber variables or the numerator
// exceeds max_deg. parts[d] receives the y-degree-d piece.
bool fiber_split(const RatFunc& v, int max_deg, std::vector<RatFunc>& parts) {
    const ChartPtr& tc = v.chart();
    int n = tc->base_dim();
    for (int i = 0; i < n; ++i)
        if (v.den().depends_on(n + i)) return false;
    std::vector<Poly> nums(static_cast<size_t>(max_deg) + 1, Poly(tc));
    for (const auto& [e, c] : v.num().terms()) {
        uint32_t d = 0;
        for (int i = 0; i < n; ++i) d += e[static_cast<size_t>(n + i)];
        if (d > static_cast<uint32_t>(max_deg)) return false;
        nums[d].add_term(e, c);
    }
    parts.clear();
    for (auto& p : nums) parts.push_back(RatFunc(std::move(p), v.den()));
    return true;
}

// Terms of exact fiber degree deg (the s(.)-part extraction of brackets on
// polynomially graded structures).
RatFunc fiber_degree_part(const RatFunc& v, int deg) {
    const ChartPtr& tc = v.chart();
    int n = tc->base_dim();
    for (int i = 0; i < n; ++i)
        if (v.den().depends_on(n + i))
            throw structural_error("fiber-degree extraction: denominator depends on fiber variables");
    Poly num(tc);
    for (const auto& [e, c] : v.num().terms()) {
        uint32_t d = 0;
        for (int i = 0; i < n; ++i) d += e[static_cast<size_t>(n + i)];
        if (d == static_cast<uint32_t>(deg)) num.add_term(e, c);
    }
    return RatFunc(std::move(num), v.den());
}

// Coefficient of the fiber monomial with given exponents, dropped to x-only
// (still on the tangent chart).
RatFunc fiber_coefficient(const RatFunc& v, const Exponents& fiber_exp) {
    const ChartPtr& tc = v.chart();
    int n = tc->base_dim();
    Poly num(tc);
    for (const auto& [e, c] : v.num().terms()) {
        bool match = true;
        for (int i = 0; i < n; ++i)
            if (e[static_cast<size_t>(n + i)] != fiber_exp[static_cast<size_t>(i)]) {
                match = false;
                break;
            }
        if (!match) continue;
        Exponents base_e = e;
        for (int i = 0; i < n; ++i) base_e[static_cast<size_t>(n + i)] = 0;
        num.add_term(base_e, c);
    }
    return RatFunc(std::move(num), v.den());
}

} // namespace

GradedStructure shape_analysis(const Multivector& P) {
    if (P.degree() != 2) throw structural_error("shape analysis expects a bivector");
    const ChartPtr& tc = P.chart();
    if (!tc->is_tangent()) throw structural_error("shape analysis expects a tangent-chart bivector");
    GradedStructure out;
    out.tangent = tc;
    out.base = tc->base();
    out.n = tc->base_dim();
    out.base_w = Multivector(out.base, 2);
    out.allocate();
    int n = out.n;

    auto fail = [&](const IndexTuple& t, const RatFunc& v) {
        out.shape = Shape::not_graded;
        out.obstruction = Witness{t, v};
        return out;
    };

    for (const auto& [t, v] : P.components()) {
        bool fx = t[0] >= n, fy = t[1] >= n;
        if (!fx && !fy) {
            // Base block: must be fiber-constant.
            for (int i = 0; i < n; ++i)
                if (v.depends_on(n + i)) return fail(t, v);
            out.base_w.set_component(t, v.drop_to_base());
        } else if (!fx && fy) {
            int i = t[0], j = t[1] - n;
            std::vector<RatFunc> parts;
            if (!fiber_split(v, 1, parts)) return fail(t, v);
            out.phi_[out.idx2(i, j)] = parts[0].drop_to_base();
            for (int a = 0; a < n; ++a) {
                Exponents fe(static_cast<size_t>(n), 0u);
                fe[static_cast<size_t>(a)] = 1;
                out.A_[out.idx3(i, j, a)] = fiber_coefficient(parts[1], fe).drop_to_base();
            }
        } else {
            int i = t[0] - n, j = t[1] - n;
            std::vector<RatFunc> parts;
            if (!fiber_split(v, 2, parts)) return fail(t, v);
            RatFunc eta = parts[0].drop_to_base();
            out.eta_[out.idx2(i, j)] = eta;
            out.eta_[out.idx2(j, i)] = -eta;
            for (int a = 0; a < n; ++a) {
                Exponents fe(static_cast<size_t>(n), 0u);
                fe[static_cast<size_t>(a)] = 1;
                RatFunc chi = fiber_coefficient(parts[1], fe).drop_to_base();
                out.chi_[out.idx3(i, j, a)] = chi;
                out.chi_[out.idx3(j, i, a)] = -chi;
            }
            for (int a = 0; a < n; ++a)
                for (int bb = a; bb < n; ++bb) {
                    Exponents fe(static_cast<size_t>(n), 0u);
                    fe[static_cast<size_t>(a)] += 1;
                    fe[static_cast<size_t>(bb)] += 1;
                    RatFunc c = fiber_coefficient(parts[2], fe).drop_to_base();
                    // y^a y^b B_{ab} with B symmetric: off-diagonal halves.
                    if (a != bb) c = c * Scalar(1, 2);
                    out.B_[out.idx4(i, j, a, bb)] = c;
                    out.B_[out.idx4(i, j, bb, a)] = c;
                    out.B_[out.idx4(j, i, a, bb)] = -c;
                    out.B_[out.idx4(j, i, bb, a)] = -c;
                }
        }
    }
    // Fill the antisymmetric mirrors of phi and A across the mixed block:
    // component (x_i, y_j) determines (x_j, y_i) independently, so nothing to
    // mirror there; the stored arrays are already indexed by (i, j) directly.
    out.shape = out.poly_extras_vanish() ? Shape::graded : Shape::poly_graded;
    return out;
}

Multivector assemble_parts(const GradedStructure& parts) {
    if (parts.shape == Shape::not_graded) throw structural_error("cannot assemble a not-graded analysis");
    const ChartPtr& tc = parts.tangent;
    int n = parts.n;
    auto y = [&](int a) { return RatFunc::variable(tc, n + a); };
    Multivector W(tc, 2);
    for (const auto& [t, v] : parts.base_w.components()) W.add_full({t[0], t[1]}, v.lift_to_tangent());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            RatFunc acc = parts.phi(i, j).lift_to_tangent();
            for (int a = 0; a < n; ++a) {
                const RatFunc& A = parts.a(i, j, a);
                if (!A.is_zero()) acc += y(a) * A.lift_to_tangent();
            }
            if (!acc.is_zero()) W.add_full({i, n + j}, acc);
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            RatFunc acc = parts.eta(i, j).lift_to_tangent();
            for (int a = 0; a < n; ++a) {
                const RatFunc& c = parts.chi(i, j, a);
                if (!c.is_zero()) acc += y(a) * c.lift_to_tangent();
            }
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    const RatFunc& B = parts.b(i, j, a, b);
                    if (!B.is_zero()) acc += y(a) * y(b) * B.lift_to_tangent();
                }
            if (!acc.is_zero()) W.add_full({n + i, n + j}, acc);
        }
    return W;
}

Multivector assemble_graded(const Multivector& w, const ContravariantConnection& D,
                            const std::map<std::pair<int, int>, SymCovariant>& psi_basis) {
    if (w.degree() != 2) throw structural_error("assemble_graded expects a base bivector");
    const ChartPtr& base = w.chart();
    ChartPtr tc = base->tangent();
    int n = base->arity();
    auto psi_at = [&](int i, int j) -> SymCovariant {
        auto it = psi_basis.find({i, j});
        if (it != psi_basis.end()) return it->second;
        auto jt = psi_basis.find({j, i});
        if (jt != psi_basis.end()) return -jt->second;
        return SymCovariant(base, 2);
    };
    // Antisymmetry of the provided basis values.
    for (const auto& [key, val] : psi_basis) {
        auto sw = psi_basis.find({key.second, key.first});
        if (sw != psi_basis.end() && sw->second != -val)
            throw structural_error("assemble_graded: psi basis is not antisymmetric");
        if (key.first == key.second && !val.is_zero())
            throw structural_error("assemble_graded: psi basis diagonal must vanish");
    }

    auto y = [&](int a) { return RatFunc::variable(tc, n + a); };
    Multivector W(tc, 2);
    for (const auto& [t, v] : w.components()) W.add_full({t[0], t[1]}, v.lift_to_tangent());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            RatFunc acc = RatFunc::zero(tc);
            for (int a = 0; a < n; ++a) {
                const RatFunc& g = D.gamma(i, j, a);
                if (!g.is_zero()) acc += y(a) * g.lift_to_tangent();
            }
            if (!acc.is_zero()) W.add_full({i, n + j}, acc);
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            SymCovariant psi = psi_at(i, j);
            if (psi.is_zero()) continue;
            RatFunc acc = iota(psi);
            if (!acc.is_zero()) W.add_full({n + i, n + j}, acc);
        }
    return W;
}

ContravariantConnection contravariant_connection_of(const GradedStructure& parts) {
    ContravariantConnection D(parts.base_w);
    int n = parts.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) D.set_gamma(i, j, k, parts.a(i, j, k));
    return D;
}

// ----------------------------------------------------- ContravariantCurvature

ContravariantCurvature::ContravariantCurvature(const ContravariantConnection& D)
    : chart_(D.chart()), n_(D.dim()) {
    size_t n = static_cast<size_t>(n_);
    c_.assign(n * n * n, OneForm(chart_));
    const Multivector& w = D.reference();
    std::vector<RatFunc> coords;
    for (int i = 0; i < n_; ++i) coords.push_back(RatFunc::variable(chart_, i));
    par::parallel_for(n * n, [&](size_t ij) {
        int i = static_cast<int>(ij / n), j = static_cast<int>(ij % n);
        if (j >= i) return;
        OneForm gamma_ij = koszul_bracket(w, OneForm::basis(chart_, i), OneForm::basis(chart_, j));
        for (int k = 0; k < n_; ++k) {
            OneForm ek = OneForm::basis(chart_, k);
            OneForm v = D.derive_form(coords[static_cast<size_t>(i)], D.derive_form(coords[static_cast<size_t>(j)], ek)) -
                        D.derive_form(coords[static_cast<size_t>(j)], D.derive_form(coords[static_cast<size_t>(i)], ek));
            for (int a = 0; a < n_; ++a) {
                const RatFunc& g = gamma_ij.comp(a);
                if (!g.is_zero()) v -= D.derive_form(coords[static_cast<size_t>(a)], ek) * g;
            }
            c_[(static_cast<size_t>(i) * n + static_cast<size_t>(j)) * n + static_cast<size_t>(k)] = v;
            c_[(static_cast<size_t>(j) * n + static_cast<size_t>(i)) * n + static_cast<size_t>(k)] = -v;
        }
    });
}

const OneForm& ContravariantCurvature::comp(int i, int j, int k) const {
    size_t n = static_cast<size_t>(n_);
    return c_.at((static_cast<size_t>(i) * n + static_cast<size_t>(j)) * n + static_cast<size_t>(k));
}

bool ContravariantCurvature::is_zero() const {
    for (const auto& v : c_)
        if (!v.is_zero()) return false;
    return true;
}

std::optional<Witness> ContravariantCurvature::witness() const {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            for (int k = 0; k < n_; ++k) {
                const OneForm& v = comp(i, j, k);
                for (int l = 0; l < n_; ++l)
                    if (!v.comp(l).is_zero()) return Witness{IndexTuple{i, j, k, l}, v.comp(l)};
            }
    return std::nullopt;
}

// ------------------------------------------------------------ GradedOperators

GradedOperators::GradedOperators(GradedStructure parts)
    : parts_(std::move(parts)), W_(assemble_parts(parts_)), D_(contravariant_connection_of(parts_)) {}

SymCovariant GradedOperators::psi_closed_form(const OneForm& alpha, const OneForm& beta) const {
    // First-order expansion of Psi from the rescaling law. The derivative
    // contraction reads w^{ab} (d_a alpha_p)(d_b beta_q); the printed middle
    // term is realized as Gamma^{ab}_p [(d_a alpha_q) beta_b - (d_a beta_q) alpha_b].
    const ChartPtr& base = parts_.base;
    const ChartPtr& tc = parts_.tangent;
    int n = parts_.n;
    auto y = [&](int a) { return RatFunc::variable(tc, n + a); };
    RatFunc F = RatFunc::zero(tc);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            RatFunc c = RatFunc::zero(base);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    RatFunc wab = parts_.base_w.full_component({a, b});
                    if (!wab.is_zero()) c += wab * alpha.comp(p).derivative(a) * beta.comp(q).derivative(b);
                    const RatFunc& g = parts_.a(a, b, p);
                    if (!g.is_zero())
                        c += g * (alpha.comp(q).derivative(a) * beta.comp(b) - beta.comp(q).derivative(a) * alpha.comp(b));
                }
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    const RatFunc& B = parts_.b(a, b, p, q);
                    if (!B.is_zero()) c += B * alpha.comp(a) * beta.comp(b);
                }
            if (!c.is_zero()) F += y(p) * y(q) * c.lift_to_tangent();
        }
    return F.is_zero() ? SymCovariant(base, 2) : iota_inverse(F);
}

SymCovariant GradedOperators::psi(const OneForm& alpha, const OneForm& beta) const {
    // The s(.)-part of {l(alpha), l(beta)}; for graded structures the whole
    // bracket, for polynomially graded ones the quadratic fiber part.
    RatFunc br = fiber_degree_part(poisson_bracket(W_, iota(alpha), iota(beta)), 2);
    SymCovariant bracket_form = br.is_zero() ? SymCovariant(parts_.base, 2) : iota_inverse(br);
    if (bracket_form.degree() != 2) throw arithmetic_error("psi: bracket is not fiberwise quadratic");
    SymCovariant closed = psi_closed_form(alpha, beta);
    if (bracket_form != closed)
        throw arithmetic_error("psi: bracket form and closed form disagree (convention error)");
    return bracket_form;
}

SymCovariant GradedOperators::d_psi(const RatFunc& f, const OneForm& alpha, const OneForm& beta) const {
    SymCovariant p = psi(alpha, beta);
    SymCovariant term1 = D_.derive_sym(f, p);
    SymCovariant term2 = psi(D_.derive_form(f, alpha), beta);
    SymCovariant term3 = psi(alpha, D_.derive_form(f, beta));
    return term1 - term2 - term3;
}

SymCovariant GradedOperators::xi_closed_form(const SymCovariant& G, const OneForm& gamma) const {
    const ChartPtr& base = parts_.base;
    const ChartPtr& tc = parts_.tangent;
    int n = parts_.n;
    auto y = [&](int a) { return RatFunc::variable(tc, n + a); };
    RatFunc F = RatFunc::zero(tc);
    // Basis term G_{ij} gamma_k Xi(dx^i . dx^j, dx^k) with
    // Xi(dx^i . dx^j, dx^k) contracted through the B-block, plus the
    // first-order corrections.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                RatFunc c = RatFunc::zero(base);
                RatFunc Gij = G.full_component({i, j});
                const RatFunc& gk = gamma.comp(k);
                for (int a = 0; a < n; ++a)
                    for (int h = 0; h < n; ++h) {
                        const RatFunc& gam_i = parts_.a(a, h, i);
                        if (!gam_i.is_zero()) {
                            RatFunc Ghj = G.full_component({h, j});
                            if (!Ghj.is_zero()) c -= Ghj * gamma.comp(k).derivative(a) * gam_i * Scalar(2);
                        }
                        const RatFunc& gam_k = parts_.a(a, h, k);
                        if (!gam_k.is_zero() && !Gij.is_zero()) c += gamma.comp(h) * Gij.derivative(a) * gam_k;
                    }
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b) {
                        RatFunc wab = parts_.base_w.full_component({a, b});
                        if (!wab.is_zero() && !Gij.is_zero() && !gk.is_zero())
                            c += wab * Gij.derivative(a) * gk.derivative(b);
                    }
                if (!c.is_zero()) F += y(i) * y(j) * y(k) * c.lift_to_tangent();
            }
    // Fiber-block term: 2 y^c y^d y^j B^{ab}_{cd} G_{aj} gamma_b.
    for (int c_i = 0; c_i < n; ++c_i)
        for (int d = 0; d < n; ++d)
            for (int j = 0; j < n; ++j) {
                RatFunc c = RatFunc::zero(base);
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b) {
                        const RatFunc& B = parts_.b(a, b, c_i, d);
                        if (B.is_zero()) continue;
                        RatFunc Gaj = G.full_component({a, j});
                        if (Gaj.is_zero()) continue;
                        c += B * Gaj * gamma.comp(b) * Scalar(2);
                    }
                if (!c.is_zero()) F += y(c_i) * y(d) * y(j) * c.lift_to_tangent();
            }
    return F.is_zero() ? SymCovariant(base, 3) : iota_inverse(F);
}

SymCovariant GradedOperators::xi(const SymCovariant& G, const OneForm& gamma) const {
    if (G.degree() != 2) throw structural_error("xi expects a degree-2 symmetric tensor");
    RatFunc br = fiber_degree_part(poisson_bracket(W_, iota(G), iota(gamma)), 3);
    SymCovariant bracket_form = br.is_zero() ? SymCovariant(parts_.base, 3) : iota_inverse(br);
    if (bracket_form.degree() != 3) throw arithmetic_error("xi: bracket is not fiberwise cubic");
    SymCovariant closed = xi_closed_form(G, gamma);
    if (bracket_form != closed)
        throw arithmetic_error("xi: bracket form and closed form disagree (convention error)");
    return bracket_form;
}

Report GradedOperators::check_graded_poisson() const {
    Report rep;
    int n = parts_.n;
    const ChartPtr& base = parts_.base;

    CheckResult base_check = is_poisson(parts_.base_w);
    base_check.name = "base_poisson";
    rep.checks.push_back(base_check);

    ContravariantCurvature cd(D_);
    CheckResult flat;
    flat.name = "flat_D";
    flat.pass = cd.is_zero();
    flat.witness = cd.witness();
    rep.checks.push_back(flat);

    CheckResult e21;
    e21.name = "d_psi_vanishes";
    e21.pass = true;
    for (int c = 0; c < n && e21.pass; ++c)
        for (int i = 0; i < n && e21.pass; ++i)
            for (int j = i + 1; j < n && e21.pass; ++j) {
                SymCovariant v =
                    d_psi(RatFunc::variable(base, c), OneForm::basis(base, i), OneForm::basis(base, j));
                if (!v.is_zero()) {
                    e21.pass = false;
                    const auto& [t, val] = *v.components().begin();
                    IndexTuple w{c, i, j};
                    w.insert(w.end(), t.begin(), t.end());
                    e21.witness = Witness{w, val};
                }
            }
    rep.checks.push_back(e21);

    CheckResult e27;
    e27.name = "xi_cyclic_vanishes";
    e27.pass = true;
    for (int i = 0; i < n && e27.pass; ++i)
        for (int j = 0; j < n && e27.pass; ++j)
            for (int k = 0; k < n && e27.pass; ++k) {
                OneForm a = OneForm::basis(base, i), b = OneForm::basis(base, j), g = OneForm::basis(base, k);
                SymCovariant acc = xi(psi(a, b), g) + xi(psi(b, g), a) + xi(psi(g, a), b);
                if (!acc.is_zero()) {
                    e27.pass = false;
                    const auto& [t, val] = *acc.components().begin();
                    IndexTuple w{i, j, k};
                    w.insert(w.end(), t.begin(), t.end());
                    e27.witness = Witness{w, val};
                }
            }
    rep.checks.push_back(e27);

    CheckResult verdict;
    verdict.name = "verdict";
    verdict.pass = rep.all_pass();
    rep.checks.push_back(verdict);
    return rep;
}

// -------------------------------------------------- horizontal lift condition

Report horizontal_poisson_condition(const Multivector& w, const NonlinearConnection& N) {
    if (w.degree() != 2) throw structural_error("horizontal condition expects a base bivector");
    if (w.chart() != N.chart()->base()) throw structural_error("chart mismatch in horizontal condition");
    int n = w.chart()->arity();
    const ChartPtr& tc = N.chart();
    Report rep;

    CheckResult base = is_poisson(w);
    base.name = "base_jacobi";
    rep.checks.push_back(base);

    NonlinearCurvature R(N);
    CheckResult curv;
    curv.name = "curvature_condition";
    curv.pass = true;
    for (int i = 0; i < n && curv.pass; ++i)
        for (int j = 0; j < n && curv.pass; ++j)
            for (int k = 0; k < n && curv.pass; ++k) {
                RatFunc acc = RatFunc::zero(tc);
                for (int h = 0; h < n; ++h)
                    for (int l = 0; l < n; ++l) {
                        RatFunc c = w.full_component({i, h}) * w.full_component({j, l});
                        if (!c.is_zero()) acc += c.lift_to_tangent() * R.r(k, h, l);
                    }
                if (!acc.is_zero()) {
                    curv.pass = false;
                    curv.witness = Witness{IndexTuple{i, j, k}, acc};
                }
            }
    rep.checks.push_back(curv);

    // The two blocks of [w^H, w^H] in the horizontal frame.
    Multivector wh = horizontal_lift_bivector(w, N);
    Multivector br = schouten_bracket(wh, wh);
    // Block 1: (1/3) sum_cyc w^{hk} d_h w^{ij} over delta^delta^delta.
    std::vector<Multivector> frames;
    for (int i = 0; i < n; ++i) frames.push_back(N.horizontal_frame(i));
    Multivector block1(tc, 3), block2(tc, 3);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                RatFunc c = RatFunc::zero(w.chart());
                for (int h = 0; h < n; ++h) {
                    c += w.full_component({h, k}) * w.full_component({i, j}).derivative(h);
                    c += w.full_component({h, i}) * w.full_component({j, k}).derivative(h);
                    c += w.full_component({h, j}) * w.full_component({k, i}).derivative(h);
                }
                if (!c.is_zero()) {
                    Multivector t3 = wedge(wedge(frames[static_cast<size_t>(i)], frames[static_cast<size_t>(j)]),
                                           frames[static_cast<size_t>(k)]);
                    block1 += t3 * (c.lift_to_tangent() * Scalar(1, 3));
                }
                RatFunc c2 = RatFunc::zero(tc);
                for (int h = 0; h < n; ++h)
                    for (int l = 0; l < n; ++l) {
                        RatFunc prod = w.full_component({h, i}) * w.full_component({l, j});
                        if (!prod.is_zero()) c2 += prod.lift_to_tangent() * R.r(k, h, l);
                    }
                if (!c2.is_zero()) {
                    Multivector dy = Multivector::basis_vector(tc, n + k);
                    Multivector t3 = wedge(wedge(frames[static_cast<size_t>(i)], frames[static_cast<size_t>(j)]), dy);
                    block2 += t3 * c2;
                }
            }
    CheckResult blocks;
    blocks.name = "bracket_decomposition";
    Multivector diff = br - (block1 + block2);
    blocks.pass = diff.is_zero();
    blocks.witness = first_nonzero(diff);
    rep.checks.push_back(blocks);

    CheckResult b1;
    b1.name = "bracket_base_block";
    b1.pass = block1.is_zero();
    b1.witness = first_nonzero(block1);
    rep.checks.push_back(b1);
    CheckResult b2;
    b2.name = "bracket_curvature_block";
    b2.pass = block2.is_zero();
    b2.witness = first_nonzero(block2);
    rep.checks.push_back(b2);

    CheckResult verdict;
    verdict.name = "verdict";
    verdict.pass = base.pass && curv.pass;
    rep.checks.push_back(verdict);
    return rep;
}

CheckResult compatibility_check(const Multivector& P, const Multivector& Q) {
    Multivector br = schouten_bracket(P, Q);
    CheckResult r;
    r.name = "compatible";
    r.pass = br.is_zero();
    r.witness = first_nonzero(br);
    return r;
}

bool hamiltonian_semispray_exists(const Multivector& w) {
    if (w.degree() != 2) throw structural_error("semispray existence expects a bivector");
    int n = w.chart()->arity();
    std::vector<std::vector<RatFunc>> m(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        m[static_cast<size_t>(i)].reserve(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) m[static_cast<size_t>(i)].push_back(w.full_component({i, j}));
    }
    return !matrix_determinant(m).is_zero();
}

bool lift_coboundary_identity(const Multivector& w, const Multivector& Q) {
    if (w.chart() != Q.chart()) throw structural_error("chart mismatch in lift identity");
    Multivector wc = complete_lift(w);
    Multivector lhs = complete_lift(lichnerowicz_coboundary(w, Q));
    Multivector rhs = lichnerowicz_coboundary(wc, complete_lift(Q));
    if (lhs != rhs) return false;
    // Vertical-lift companion identity on coordinates and their products.
    int n = w.chart()->arity();
    std::vector<RatFunc> fns;
    for (int i = 0; i < n; ++i) fns.push_back(RatFunc::variable(w.chart(), i));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            fns.push_back(RatFunc::variable(w.chart(), i) * RatFunc::variable(w.chart(), j));
    for (const auto& f : fns) {
        Multivector lf = vertical_lift(lichnerowicz_coboundary(w, Multivector::function(f)));
        Multivector rf = lichnerowicz_coboundary(wc, Multivector::function(vertical_lift(f)));
        if (lf != rf) return false;
    }
    return true;
}

} // namespace plift

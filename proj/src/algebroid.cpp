#include "plift/algebroid.hpp"

#include <sstream>

namespace plift {

// --------------------------------------------------------------- LieAlgebroid

AlgebroidPtr LieAlgebroid::make(ChartPtr base, int rank, std::vector<std::vector<RatFunc>> anchor,
                                std::vector<std::vector<std::vector<RatFunc>>> structure, std::string label) {
    if (base->is_tangent()) throw structural_error("algebroid base must be a base chart");
    auto A = std::shared_ptr<LieAlgebroid>(new LieAlgebroid());
    A->base_ = base;
    A->rank_ = rank;
    A->label_ = std::move(label);

    if (A->label_ == "tangent") {
        A->ext_ = base->tangent();
    } else {
        std::vector<std::string> vars = base->vars();
        for (int u = 0; u < rank; ++u) vars.push_back("s" + std::to_string(u + 1) + "_" + A->label_);
        A->ext_ = Chart::make_base("A[" + A->label_ + " over " + base->name() + "]", vars);
    }

    int n = base->arity();
    A->anchor_.assign(static_cast<size_t>(rank * n), RatFunc::zero(base));
    for (int u = 0; u < rank; ++u)
        for (int i = 0; i < n; ++i) A->anchor_[static_cast<size_t>(u * n + i)] = anchor.at(u).at(i);

    A->structure_.assign(static_cast<size_t>(rank * rank * rank), RatFunc::zero(base));
    for (int u = 0; u < rank; ++u)
        for (int v = 0; v < rank; ++v)
            for (int w = 0; w < rank; ++w)
                A->structure_[static_cast<size_t>((u * rank + v) * rank + w)] = structure.at(u).at(v).at(w);

    for (int u = 0; u < rank; ++u)
        for (int v = 0; v <= u; ++v)
            for (int w = 0; w < rank; ++w)
                if (A->structure(u, v, w) != -A->structure(v, u, w))
                    throw structural_error("structure functions must be antisymmetric in the lower indices");
    return A;
}

AlgebroidPtr LieAlgebroid::tangent(const ChartPtr& base) {
    int n = base->arity();
    std::vector<std::vector<RatFunc>> anchor(static_cast<size_t>(n),
                                             std::vector<RatFunc>(static_cast<size_t>(n), RatFunc::zero(base)));
    for (int i = 0; i < n; ++i) anchor[static_cast<size_t>(i)][static_cast<size_t>(i)] = RatFunc::one(base);
    std::vector<std::vector<std::vector<RatFunc>>> c(
        static_cast<size_t>(n), std::vector<std::vector<RatFunc>>(
                                    static_cast<size_t>(n), std::vector<RatFunc>(static_cast<size_t>(n), RatFunc::zero(base))));
    return make(base, n, std::move(anchor), std::move(c), "tangent");
}

AlgebroidPtr LieAlgebroid::cotangent(const Multivector& w) {
    if (w.degree() != 2) throw structural_error("cotangent algebroid needs a bivector");
    ChartPtr base = w.chart();
    if (base->is_tangent()) throw structural_error("cotangent algebroid is built over a base chart");
    int n = base->arity();
    std::vector<std::vector<RatFunc>> anchor(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        Multivector s = sharp(w, OneForm::basis(base, i));
        std::vector<RatFunc> row;
        row.reserve(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) row.push_back(s.component({j}));
        anchor[static_cast<size_t>(i)] = std::move(row);
    }
    // Structure functions from the Koszul bracket on the coordinate coframe.
    std::vector<std::vector<std::vector<RatFunc>>> c(
        static_cast<size_t>(n), std::vector<std::vector<RatFunc>>(
                                    static_cast<size_t>(n), std::vector<RatFunc>(static_cast<size_t>(n), RatFunc::zero(base))));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            OneForm br = koszul_bracket(w, OneForm::basis(base, i), OneForm::basis(base, j));
            for (int k = 0; k < n; ++k) c[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)] = br.comp(k);
        }
    return make(base, n, std::move(anchor), std::move(c), "cotangent");
}

const RatFunc& LieAlgebroid::anchor(int u, int i) const {
    return anchor_.at(static_cast<size_t>(u * base_->arity() + i));
}

const RatFunc& LieAlgebroid::structure(int u, int v, int w) const {
    return structure_.at(static_cast<size_t>((u * rank_ + v) * rank_ + w));
}

Multivector LieAlgebroid::anchor_of(const std::vector<RatFunc>& section) const {
    if (static_cast<int>(section.size()) != rank_) throw structural_error("section has wrong rank");
    Multivector X(base_, 1);
    for (int u = 0; u < rank_; ++u)
        for (int i = 0; i < base_->arity(); ++i) X.add_full({i}, section[static_cast<size_t>(u)] * anchor(u, i));
    return X;
}

RatFunc LieAlgebroid::anchor_derive(int u, const RatFunc& f) const {
    RatFunc acc = RatFunc::zero(base_);
    for (int i = 0; i < base_->arity(); ++i) acc += anchor(u, i) * f.derivative(i);
    return acc;
}

bool LieAlgebroid::anchor_compatible() const {
    // sigma([e_u, e_v]) = [sigma e_u, sigma e_v] on the basis.
    for (int u = 0; u < rank_; ++u) {
        Multivector Xu(base_, 1);
        for (int i = 0; i < base_->arity(); ++i)
            if (!anchor(u, i).is_zero()) Xu.set_component({i}, anchor(u, i));
        for (int v = 0; v < u; ++v) {
            Multivector Xv(base_, 1);
            for (int i = 0; i < base_->arity(); ++i)
                if (!anchor(v, i).is_zero()) Xv.set_component({i}, anchor(v, i));
            Multivector lhs(base_, 1);
            for (int w = 0; w < rank_; ++w) {
                const RatFunc& c = structure(u, v, w);
                if (c.is_zero()) continue;
                for (int i = 0; i < base_->arity(); ++i) lhs.add_full({i}, c * anchor(w, i));
            }
            if (lhs != lie_bracket(Xu, Xv)) return false;
        }
    }
    return true;
}

bool LieAlgebroid::jacobi_holds() const {
    // cyclic sum of [e_u, [e_v, e_w]] expanded through structure functions.
    for (int u = 0; u < rank_; ++u)
        for (int v = u + 1; v < rank_; ++v)
            for (int w = v + 1; w < rank_; ++w) {
                for (int s = 0; s < rank_; ++s) {
                    RatFunc acc = RatFunc::zero(base_);
                    int trip[3][3] = {{u, v, w}, {v, w, u}, {w, u, v}};
                    for (auto& t : trip) {
                        // [e_a, [e_b, e_c]] = c^t_{bc} c^s_{at} + sigma(e_a)(c^s_{bc})
                        int a = t[0], b = t[1], c = t[2];
                        for (int m = 0; m < rank_; ++m) acc += structure(b, c, m) * structure(a, m, s);
                        acc += anchor_derive(a, structure(b, c, s));
                    }
                    if (!acc.is_zero()) return false;
                }
            }
    return true;
}

RatFunc LieAlgebroid::to_extended(const RatFunc& base_fn) const {
    if (base_fn.chart() != base_) throw structural_error("expected a base-chart function");
    std::vector<int> slot_map(static_cast<size_t>(base_->arity()));
    for (int i = 0; i < base_->arity(); ++i) slot_map[static_cast<size_t>(i)] = i;
    return base_fn.on_chart(ext_, slot_map);
}

RatFunc LieAlgebroid::from_extended_scalar(const RatFunc& f) const {
    std::vector<int> slot_map(static_cast<size_t>(ext_->arity()), -1);
    for (int i = 0; i < base_->arity(); ++i) slot_map[static_cast<size_t>(i)] = i;
    return f.on_chart(base_, slot_map);
}

// --------------------------------------------------------- AlgebroidSymTensor

AlgebroidSymTensor::AlgebroidSymTensor(AlgebroidPtr algebroid, int degree)
    : alg_(std::move(algebroid)), degree_(degree) {
    if (degree < 0) throw structural_error("negative tensor degree");
}

AlgebroidSymTensor AlgebroidSymTensor::function(AlgebroidPtr algebroid, const RatFunc& f) {
    AlgebroidSymTensor t(std::move(algebroid), 0);
    if (f.chart() != t.alg_->base()) throw structural_error("function must live on the algebroid base");
    if (!f.is_zero()) t.comps_.emplace(IndexTuple{}, f);
    return t;
}

AlgebroidSymTensor AlgebroidSymTensor::basis_section(AlgebroidPtr algebroid, int u) {
    AlgebroidSymTensor t(algebroid, 1);
    t.set_component({u}, RatFunc::one(algebroid->base()));
    return t;
}

AlgebroidSymTensor AlgebroidSymTensor::section(AlgebroidPtr algebroid, const std::vector<RatFunc>& coeffs) {
    AlgebroidSymTensor t(algebroid, 1);
    for (int u = 0; u < algebroid->rank(); ++u)
        if (!coeffs.at(static_cast<size_t>(u)).is_zero()) t.set_component({u}, coeffs[static_cast<size_t>(u)]);
    return t;
}

RatFunc AlgebroidSymTensor::component(const IndexTuple& sorted) const {
    auto it = comps_.find(sorted);
    return it == comps_.end() ? RatFunc::zero(alg_->base()) : it->second;
}

void AlgebroidSymTensor::set_component(const IndexTuple& sorted, const RatFunc& v) {
    for (size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] < sorted[i - 1]) throw structural_error("tensor component tuple must be non-decreasing");
    if (static_cast<int>(sorted.size()) != degree_) throw structural_error("tuple length must equal the degree");
    for (int i : sorted)
        if (i < 0 || i >= alg_->rank()) throw structural_error("section index out of range");
    if (v.is_zero())
        comps_.erase(sorted);
    else
        comps_[sorted] = v;
}

void AlgebroidSymTensor::add_sorted(IndexTuple t, const RatFunc& v) {
    if (v.is_zero()) return;
    std::sort(t.begin(), t.end());
    auto it = comps_.find(t);
    if (it == comps_.end()) {
        comps_.emplace(std::move(t), v);
    } else {
        it->second += v;
        if (it->second.is_zero()) comps_.erase(it);
    }
}

AlgebroidSymTensor AlgebroidSymTensor::operator-() const {
    AlgebroidSymTensor r(alg_, degree_);
    for (const auto& [t, v] : comps_) r.comps_.emplace(t, -v);
    return r;
}

AlgebroidSymTensor& AlgebroidSymTensor::operator+=(const AlgebroidSymTensor& o) {
    if (alg_ != o.alg_ || degree_ != o.degree_) throw structural_error("algebroid tensor mismatch in addition");
    for (const auto& [t, v] : o.comps_) add_sorted(t, v);
    return *this;
}

AlgebroidSymTensor AlgebroidSymTensor::operator*(const RatFunc& f) const {
    AlgebroidSymTensor r(alg_, degree_);
    for (const auto& [t, v] : comps_) {
        RatFunc s = v * f;
        if (!s.is_zero()) r.comps_.emplace(t, s);
    }
    return r;
}

bool AlgebroidSymTensor::operator==(const AlgebroidSymTensor& o) const {
    return alg_ == o.alg_ && degree_ == o.degree_ && comps_ == o.comps_;
}

RatFunc AlgebroidSymTensor::to_polynomial() const {
    const ChartPtr& ext = alg_->extended();
    RatFunc acc = RatFunc::zero(ext);
    for (const auto& [t, v] : comps_) {
        RatFunc term = alg_->to_extended(v) * RatFunc(ext, SymCovariant::multiplicity(t));
        for (int u : t) term *= RatFunc::variable(ext, alg_->slot(u));
        acc += term;
    }
    return acc;
}

AlgebroidSymTensor AlgebroidSymTensor::from_polynomial(AlgebroidPtr algebroid, const RatFunc& f, int degree) {
    AlgebroidSymTensor out(algebroid, degree);
    const ChartPtr& ext = algebroid->extended();
    int n = algebroid->base()->arity();
    int p = algebroid->rank();
    for (int s = 0; s < p; ++s)
        if (f.den().depends_on(algebroid->slot(s)))
            throw structural_error("denominator depends on section slots");
    // Group numerator terms by slot exponents.
    std::map<Exponents, Poly> groups;
    for (const auto& [e, c] : f.num().terms()) {
        Exponents slot_part(static_cast<size_t>(p), 0u);
        Exponents base_part(static_cast<size_t>(ext->arity()), 0u);
        uint32_t deg = 0;
        for (int i = 0; i < ext->arity(); ++i) {
            if (i >= n && i < n + p) {
                slot_part[static_cast<size_t>(i - n)] = e[static_cast<size_t>(i)];
                deg += e[static_cast<size_t>(i)];
            } else {
                base_part[static_cast<size_t>(i)] = e[static_cast<size_t>(i)];
            }
        }
        if (deg != static_cast<uint32_t>(degree))
            throw structural_error("polynomial is not fiberwise homogeneous of the expected degree");
        auto it = groups.find(slot_part);
        if (it == groups.end()) it = groups.emplace(slot_part, Poly(ext)).first;
        it->second.add_term(base_part, c);
    }
    for (const auto& [slot_part, num] : groups) {
        RatFunc coeff = algebroid->from_extended_scalar(RatFunc(num, f.den()));
        IndexTuple t;
        for (size_t u = 0; u < slot_part.size(); ++u)
            for (uint32_t k = 0; k < slot_part[u]; ++k) t.push_back(static_cast<int>(u));
        out.add_sorted(t, coeff / RatFunc(algebroid->base(), SymCovariant::multiplicity(t)));
    }
    return out;
}

std::string AlgebroidSymTensor::str() const {
    std::ostringstream os;
    os << "{ ";
    bool first = true;
    for (const auto& [t, v] : comps_) {
        if (!first) os << "; ";
        first = false;
        os << "[";
        for (size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << (t[i] + 1);
        os << "] = " << v.str();
    }
    os << " }";
    return os.str();
}

SymCovariant AlgebroidSymTensor::as_sym_covariant() const {
    SymCovariant g(alg_->base(), degree_);
    for (const auto& [t, v] : comps_) g.set_component(t, v);
    return g;
}

AlgebroidSymTensor AlgebroidSymTensor::from_sym_covariant(AlgebroidPtr cotangent, const SymCovariant& G) {
    if (G.chart() != cotangent->base()) throw structural_error("tensor lives on the wrong chart");
    AlgebroidSymTensor t(std::move(cotangent), G.degree());
    for (const auto& [tuple, v] : G.components()) t.set_component(tuple, v);
    return t;
}

AlgebroidSymTensor sym_product(const AlgebroidSymTensor& G, const AlgebroidSymTensor& H) {
    if (G.algebroid() != H.algebroid()) throw structural_error("algebroid mismatch in symmetric product");
    RatFunc prod = G.to_polynomial() * H.to_polynomial();
    return AlgebroidSymTensor::from_polynomial(G.algebroid(), prod, G.degree() + H.degree());
}

RatFunc algebroid_poisson_bracket(const LieAlgebroid& A, const RatFunc& F, const RatFunc& G) {
    const ChartPtr& ext = A.extended();
    if (F.chart() != ext || G.chart() != ext) throw structural_error("bracket arguments must live on the extended chart");
    int n = A.base()->arity();
    int p = A.rank();
    RatFunc acc = RatFunc::zero(ext);
    std::vector<RatFunc> dFz(static_cast<size_t>(p)), dGz(static_cast<size_t>(p));
    for (int u = 0; u < p; ++u) {
        dFz[static_cast<size_t>(u)] = F.derivative(A.slot(u));
        dGz[static_cast<size_t>(u)] = G.derivative(A.slot(u));
    }
    // {z_u, z_v} = c^w_{uv} z_w
    for (int u = 0; u < p; ++u) {
        if (dFz[static_cast<size_t>(u)].is_zero()) continue;
        for (int v = 0; v < p; ++v) {
            if (dGz[static_cast<size_t>(v)].is_zero()) continue;
            RatFunc cz = RatFunc::zero(ext);
            for (int w = 0; w < p; ++w) {
                const RatFunc& c = A.structure(u, v, w);
                if (!c.is_zero()) cz += A.to_extended(c) * RatFunc::variable(ext, A.slot(w));
            }
            if (!cz.is_zero()) acc += dFz[static_cast<size_t>(u)] * dGz[static_cast<size_t>(v)] * cz;
        }
    }
    // {z_u, f} = sigma(e_u) f
    for (int u = 0; u < p; ++u) {
        for (int i = 0; i < n; ++i) {
            const RatFunc& s = A.anchor(u, i);
            if (s.is_zero()) continue;
            RatFunc se = A.to_extended(s);
            if (!dFz[static_cast<size_t>(u)].is_zero()) acc += dFz[static_cast<size_t>(u)] * se * G.derivative(i);
            if (!dGz[static_cast<size_t>(u)].is_zero()) acc -= dGz[static_cast<size_t>(u)] * se * F.derivative(i);
        }
    }
    return acc;
}

AlgebroidSymTensor sym_bracket(const AlgebroidSymTensor& G, const AlgebroidSymTensor& H) {
    if (G.algebroid() != H.algebroid()) throw structural_error("algebroid mismatch in symmetric bracket");
    int p = G.degree(), q = H.degree();
    if (p + q < 1) {
        // <g,h> = 0 for two functions.
        return AlgebroidSymTensor(G.algebroid(), 0);
    }
    RatFunc br = algebroid_poisson_bracket(*G.algebroid(), G.to_polynomial(), H.to_polynomial());
    int deg = p + q - 1;
    return AlgebroidSymTensor::from_polynomial(G.algebroid(), br, deg);
}

AlgebroidSymTensor algebroid_lie_derivative(const AlgebroidSymTensor& s, const AlgebroidSymTensor& T) {
    if (s.degree() != 1) throw structural_error("lie derivative direction must be a section");
    return sym_bracket(s, T);
}

RatFunc algebroid_lie_derivative(const AlgebroidSymTensor& s, const RatFunc& f) {
    if (s.degree() != 1) throw structural_error("lie derivative direction must be a section");
    const auto& A = s.algebroid();
    if (f.chart() != A->base()) throw structural_error("function must live on the algebroid base");
    RatFunc acc = RatFunc::zero(A->base());
    for (const auto& [t, v] : s.components()) acc += v * A->anchor_derive(t[0], f);
    return acc;
}

} // namespace plift

#include "plift/tensors.hpp"

#include <algorithm>
#include <sstream>

namespace plift {

namespace {

std::string tuple_str(const IndexTuple& t) {
    std::string s = "[";
    for (size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(t[i] + 1);
    }
    return s + "]";
}

std::string comps_str(const std::map<IndexTuple, RatFunc>& comps) {
    if (comps.empty()) return "{ }";
    std::ostringstream os;
    os << "{ ";
    bool first = true;
    for (const auto& [t, v] : comps) {
        if (!first) os << "; ";
        first = false;
        os << tuple_str(t) << " = " << v.str();
    }
    os << " }";
    return os.str();
}

// Sign of the merge of two sorted disjoint tuples: (-1)^inversions.
int merge_sign(const IndexTuple& a, const IndexTuple& b) {
    int inv = 0;
    for (int x : a)
        for (int y : b)
            if (x > y) ++inv;
    return (inv % 2 == 0) ? 1 : -1;
}

RatFunc det(const std::vector<std::vector<RatFunc>>& m, std::vector<int>& cols, size_t row, const ChartPtr& chart) {
    if (row == m.size()) return RatFunc::one(chart);
    RatFunc acc = RatFunc::zero(chart);
    for (size_t k = 0; k < cols.size(); ++k) {
        int c = cols[k];
        if (c < 0) continue;
        const RatFunc& entry = m[row][static_cast<size_t>(c)];
        if (entry.is_zero()) continue;
        cols[k] = -1;
        RatFunc sub = det(m, cols, row + 1, chart);
        cols[k] = c;
        int sign_inv = 0;
        for (size_t j = 0; j < k; ++j)
            if (cols[j] >= 0) ++sign_inv;
        RatFunc term = entry * sub;
        if (sign_inv % 2) term = -term;
        acc += term;
    }
    return acc;
}

} // namespace

std::vector<IndexTuple> increasing_tuples(int n, int k) {
    std::vector<IndexTuple> out;
    if (k < 0 || k > n) return out;
    IndexTuple t(static_cast<size_t>(k));
    std::function<void(int, int)> rec = [&](int start, int pos) {
        if (pos == k) {
            out.push_back(t);
            return;
        }
        for (int i = start; i < n; ++i) {
            t[static_cast<size_t>(pos)] = i;
            rec(i + 1, pos + 1);
        }
    };
    rec(0, 0);
    return out;
}

std::vector<IndexTuple> nondecreasing_tuples(int n, int k) {
    std::vector<IndexTuple> out;
    if (k < 0) return out;
    IndexTuple t(static_cast<size_t>(k));
    std::function<void(int, int)> rec = [&](int start, int pos) {
        if (pos == k) {
            out.push_back(t);
            return;
        }
        for (int i = start; i < n; ++i) {
            t[static_cast<size_t>(pos)] = i;
            rec(i, pos + 1);
        }
    };
    rec(0, 0);
    return out;
}

// ---------------------------------------------------------------- Multivector

Multivector::Multivector(ChartPtr chart, int degree) : chart_(std::move(chart)), degree_(degree) {
    if (degree < 0) throw structural_error("negative multivector degree");
}

Multivector Multivector::function(const RatFunc& f) {
    Multivector m(f.chart(), 0);
    if (!f.is_zero()) m.comps_.emplace(IndexTuple{}, f);
    return m;
}

Multivector Multivector::basis_vector(ChartPtr chart, int i) {
    Multivector m(chart, 1);
    m.set_component({i}, RatFunc::one(chart));
    return m;
}

RatFunc Multivector::component(const IndexTuple& sorted) const {
    auto it = comps_.find(sorted);
    return it == comps_.end() ? RatFunc::zero(chart_) : it->second;
}

RatFunc Multivector::full_component(const IndexTuple& t) const {
    IndexTuple s = t;
    int sign = 1;
    // Insertion sort, tracking transpositions.
    for (size_t i = 1; i < s.size(); ++i) {
        for (size_t j = i; j > 0 && s[j - 1] > s[j]; --j) {
            std::swap(s[j - 1], s[j]);
            sign = -sign;
        }
    }
    for (size_t i = 1; i < s.size(); ++i)
        if (s[i] == s[i - 1]) return RatFunc::zero(chart_);
    RatFunc v = component(s);
    return sign > 0 ? v : -v;
}

void Multivector::set_component(const IndexTuple& sorted, const RatFunc& v) {
    for (size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] <= sorted[i - 1]) throw structural_error("multivector component tuple must be strictly increasing");
    if (static_cast<int>(sorted.size()) != degree_) throw structural_error("component tuple length must equal the degree");
    for (int i : sorted)
        if (i < 0 || i >= chart_->arity()) throw structural_error("component index out of range");
    if (v.is_zero())
        comps_.erase(sorted);
    else
        comps_[sorted] = v;
}

void Multivector::add_full(const IndexTuple& t, const RatFunc& c) {
    if (c.is_zero()) return;
    IndexTuple s = t;
    int sign = 1;
    for (size_t i = 1; i < s.size(); ++i) {
        for (size_t j = i; j > 0 && s[j - 1] > s[j]; --j) {
            std::swap(s[j - 1], s[j]);
            sign = -sign;
        }
    }
    for (size_t i = 1; i < s.size(); ++i)
        if (s[i] == s[i - 1]) return;
    auto it = comps_.find(s);
    RatFunc add = sign > 0 ? c : -c;
    if (it == comps_.end()) {
        comps_.emplace(std::move(s), add);
    } else {
        it->second += add;
        if (it->second.is_zero()) comps_.erase(it);
    }
}

RatFunc Multivector::scalar_part() const {
    if (degree_ != 0) throw structural_error("scalar_part on a positive-degree multivector");
    return component({});
}

void Multivector::check_same_chart(const Multivector& o) const {
    if (chart_ != o.chart_) throw structural_error("multivector chart mismatch");
}

Multivector Multivector::operator-() const {
    Multivector r(chart_, degree_);
    for (const auto& [t, v] : comps_) r.comps_.emplace(t, -v);
    return r;
}

Multivector& Multivector::operator+=(const Multivector& o) {
    check_same_chart(o);
    if (degree_ != o.degree_) throw structural_error("multivector degree mismatch in addition");
    for (const auto& [t, v] : o.comps_) {
        auto it = comps_.find(t);
        if (it == comps_.end()) {
            comps_.emplace(t, v);
        } else {
            it->second += v;
            if (it->second.is_zero()) comps_.erase(it);
        }
    }
    return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) { return *this += -o; }

Multivector Multivector::operator*(const RatFunc& f) const {
    Multivector r(chart_, degree_);
    if (f.is_zero()) return r;
    for (const auto& [t, v] : comps_) {
        RatFunc s = v * f;
        if (!s.is_zero()) r.comps_.emplace(t, s);
    }
    return r;
}

Multivector Multivector::operator*(const Scalar& c) const {
    Multivector r(chart_, degree_);
    if (plift::is_zero(c)) return r;
    for (const auto& [t, v] : comps_) r.comps_.emplace(t, v * c);
    return r;
}

bool Multivector::operator==(const Multivector& o) const {
    return chart_ == o.chart_ && degree_ == o.degree_ && comps_ == o.comps_;
}

RatFunc Multivector::pair(const std::vector<std::vector<RatFunc>>& forms) const {
    if (static_cast<int>(forms.size()) != degree_) throw structural_error("pairing needs one form per degree");
    RatFunc acc = RatFunc::zero(chart_);
    for (const auto& [t, v] : comps_) {
        std::vector<std::vector<RatFunc>> m(forms.size());
        for (size_t r = 0; r < forms.size(); ++r) {
            m[r].reserve(t.size());
            for (int idx : t) m[r].push_back(forms[r][static_cast<size_t>(idx)]);
        }
        std::vector<int> cols(t.size());
        for (size_t i = 0; i < t.size(); ++i) cols[i] = static_cast<int>(i);
        acc += v * det(m, cols, 0, chart_);
    }
    return acc;
}

std::string Multivector::str() const { return comps_str(comps_); }

Multivector wedge(const Multivector& P, const Multivector& Q) {
    P.check_same_chart(Q);
    int deg = P.degree() + Q.degree();
    if (deg > P.chart()->arity()) return Multivector::zero(P.chart(), deg);
    Multivector r(P.chart(), deg);
    for (const auto& [t1, c1] : P.components()) {
        for (const auto& [t2, c2] : Q.components()) {
            bool shared = false;
            for (int x : t1) {
                if (std::binary_search(t2.begin(), t2.end(), x)) {
                    shared = true;
                    break;
                }
            }
            if (shared) continue;
            IndexTuple merged;
            merged.reserve(t1.size() + t2.size());
            std::merge(t1.begin(), t1.end(), t2.begin(), t2.end(), std::back_inserter(merged));
            RatFunc c = c1 * c2;
            if (merge_sign(t1, t2) < 0) c = -c;
            r.add_full(merged, c);
        }
    }
    return r;
}

// --------------------------------------------------------------- SymCovariant

SymCovariant::SymCovariant(ChartPtr chart, int degree) : chart_(std::move(chart)), degree_(degree) {
    if (degree < 0) throw structural_error("negative symmetric tensor degree");
}

SymCovariant SymCovariant::function(const RatFunc& f) {
    SymCovariant g(f.chart(), 0);
    if (!f.is_zero()) g.comps_.emplace(IndexTuple{}, f);
    return g;
}

SymCovariant SymCovariant::basis_form(ChartPtr chart, int i) {
    SymCovariant g(chart, 1);
    g.set_component({i}, RatFunc::one(chart));
    return g;
}

RatFunc SymCovariant::component(const IndexTuple& sorted) const {
    auto it = comps_.find(sorted);
    return it == comps_.end() ? RatFunc::zero(chart_) : it->second;
}

RatFunc SymCovariant::full_component(IndexTuple t) const {
    std::sort(t.begin(), t.end());
    return component(t);
}

void SymCovariant::set_component(const IndexTuple& sorted, const RatFunc& v) {
    for (size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] < sorted[i - 1]) throw structural_error("symmetric component tuple must be non-decreasing");
    if (static_cast<int>(sorted.size()) != degree_) throw structural_error("component tuple length must equal the degree");
    for (int i : sorted)
        if (i < 0 || i >= chart_->arity()) throw structural_error("component index out of range");
    if (v.is_zero())
        comps_.erase(sorted);
    else
        comps_[sorted] = v;
}

void SymCovariant::add_sorted(IndexTuple t, const RatFunc& v) {
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

RatFunc SymCovariant::scalar_part() const {
    if (degree_ != 0) throw structural_error("scalar_part on a positive-degree tensor");
    return component({});
}

void SymCovariant::check_same_chart(const SymCovariant& o) const {
    if (chart_ != o.chart_) throw structural_error("symmetric tensor chart mismatch");
}

SymCovariant SymCovariant::operator-() const {
    SymCovariant r(chart_, degree_);
    for (const auto& [t, v] : comps_) r.comps_.emplace(t, -v);
    return r;
}

SymCovariant& SymCovariant::operator+=(const SymCovariant& o) {
    check_same_chart(o);
    if (degree_ != o.degree_) throw structural_error("symmetric tensor degree mismatch in addition");
    for (const auto& [t, v] : o.comps_) add_sorted(t, v);
    return *this;
}

SymCovariant& SymCovariant::operator-=(const SymCovariant& o) { return *this += -o; }

SymCovariant SymCovariant::operator*(const RatFunc& f) const {
    SymCovariant r(chart_, degree_);
    if (f.is_zero()) return r;
    for (const auto& [t, v] : comps_) {
        RatFunc s = v * f;
        if (!s.is_zero()) r.comps_.emplace(t, s);
    }
    return r;
}

SymCovariant SymCovariant::operator*(const Scalar& c) const {
    SymCovariant r(chart_, degree_);
    if (plift::is_zero(c)) return r;
    for (const auto& [t, v] : comps_) r.comps_.emplace(t, v * c);
    return r;
}

bool SymCovariant::operator==(const SymCovariant& o) const {
    return chart_ == o.chart_ && degree_ == o.degree_ && comps_ == o.comps_;
}

std::string SymCovariant::str() const { return comps_str(comps_); }

Scalar SymCovariant::multiplicity(const IndexTuple& sorted) {
    Scalar k_fact(1);
    for (size_t i = 2; i <= sorted.size(); ++i) k_fact *= Scalar(static_cast<long>(i));
    Scalar denom(1);
    size_t run = 1;
    for (size_t i = 1; i <= sorted.size(); ++i) {
        if (i < sorted.size() && sorted[i] == sorted[i - 1]) {
            ++run;
        } else {
            for (size_t j = 2; j <= run; ++j) denom *= Scalar(static_cast<long>(j));
            run = 1;
        }
    }
    return k_fact / denom;
}

std::map<Exponents, RatFunc> SymCovariant::iota_coefficients() const {
    std::map<Exponents, RatFunc> out;
    size_t arity = static_cast<size_t>(chart_->arity());
    for (const auto& [t, v] : comps_) {
        Exponents e(arity, 0u);
        for (int i : t) e[static_cast<size_t>(i)]++;
        out.emplace(std::move(e), v * multiplicity(t));
    }
    return out;
}

SymCovariant SymCovariant::from_iota_coefficients(ChartPtr chart, int degree, const std::map<Exponents, RatFunc>& coeffs) {
    SymCovariant g(chart, degree);
    for (const auto& [e, v] : coeffs) {
        if (v.is_zero()) continue;
        IndexTuple t;
        for (size_t i = 0; i < e.size(); ++i)
            for (uint32_t k = 0; k < e[i]; ++k) t.push_back(static_cast<int>(i));
        if (static_cast<int>(t.size()) != degree)
            throw structural_error("iota coefficient of unexpected homogeneity degree");
        g.add_sorted(t, v / RatFunc(g.chart(), multiplicity(t)));
    }
    return g;
}

SymCovariant sym_product(const SymCovariant& G, const SymCovariant& H) {
    G.check_same_chart(H);
    auto cg = G.iota_coefficients();
    auto ch = H.iota_coefficients();
    std::map<Exponents, RatFunc> conv;
    for (const auto& [eg, vg] : cg) {
        for (const auto& [eh, vh] : ch) {
            Exponents e(eg.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = eg[i] + eh[i];
            RatFunc v = vg * vh;
            if (v.is_zero()) continue;
            auto it = conv.find(e);
            if (it == conv.end())
                conv.emplace(std::move(e), v);
            else
                it->second += v;
        }
    }
    return SymCovariant::from_iota_coefficients(G.chart(), G.degree() + H.degree(), conv);
}

// -------------------------------------------------------------------- OneForm

OneForm::OneForm(ChartPtr chart)
    : chart_(chart), comps_(static_cast<size_t>(chart->arity()), RatFunc::zero(chart)) {}

OneForm::OneForm(ChartPtr chart, std::vector<RatFunc> comps) : chart_(std::move(chart)), comps_(std::move(comps)) {
    if (static_cast<int>(comps_.size()) != chart_->arity())
        throw structural_error("one-form needs one component per chart variable");
}

OneForm OneForm::basis(ChartPtr chart, int i) {
    OneForm a(chart);
    a.comp(i) = RatFunc::one(chart);
    return a;
}

OneForm OneForm::differential(const RatFunc& f) {
    OneForm a(f.chart());
    for (int i = 0; i < f.chart()->arity(); ++i) a.comp(i) = f.derivative(i);
    return a;
}

bool OneForm::is_zero() const {
    for (const auto& c : comps_)
        if (!c.is_zero()) return false;
    return true;
}

OneForm OneForm::operator-() const {
    OneForm r(chart_);
    for (int i = 0; i < chart_->arity(); ++i) r.comp(i) = -comps_[static_cast<size_t>(i)];
    return r;
}

OneForm& OneForm::operator+=(const OneForm& o) {
    if (chart_ != o.chart_) throw structural_error("one-form chart mismatch");
    for (size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
    return *this;
}

OneForm& OneForm::operator-=(const OneForm& o) { return *this += -o; }

OneForm OneForm::operator*(const RatFunc& f) const {
    OneForm r(chart_);
    for (int i = 0; i < chart_->arity(); ++i) r.comp(i) = comps_[static_cast<size_t>(i)] * f;
    return r;
}

SymCovariant OneForm::as_sym() const {
    SymCovariant g(chart_, 1);
    for (int i = 0; i < chart_->arity(); ++i)
        if (!comps_[static_cast<size_t>(i)].is_zero()) g.set_component({i}, comps_[static_cast<size_t>(i)]);
    return g;
}

OneForm OneForm::from_sym(const SymCovariant& G) {
    if (G.degree() != 1) throw structural_error("expected a degree-1 symmetric tensor");
    OneForm a(G.chart());
    for (const auto& [t, v] : G.components()) a.comp(t[0]) = v;
    return a;
}

RatFunc OneForm::apply(const Multivector& X) const {
    if (X.degree() != 1) throw structural_error("one-form applies to a vector field");
    if (X.chart() != chart_) throw structural_error("one-form chart mismatch");
    RatFunc acc = RatFunc::zero(chart_);
    for (const auto& [t, v] : X.components()) acc += comps_[static_cast<size_t>(t[0])] * v;
    return acc;
}

std::string OneForm::str() const {
    std::ostringstream os;
    os << "{ ";
    bool first = true;
    for (int i = 0; i < chart_->arity(); ++i) {
        if (comps_[static_cast<size_t>(i)].is_zero()) continue;
        if (!first) os << "; ";
        first = false;
        os << "[" << (i + 1) << "] = " << comps_[static_cast<size_t>(i)].str();
    }
    if (first) os << "0 ";
    os << "}";
    return os.str();
}

// ----------------------------------------------------------------- VolumeForm

VolumeForm::VolumeForm(ChartPtr chart, RatFunc density, bool sqrt_mode)
    : chart_(std::move(chart)), density_(std::move(density)), sqrt_mode_(sqrt_mode) {
    if (density_.is_zero()) throw arithmetic_error("volume form density must be nonzero");
}

RatFunc VolumeForm::dlog(int var) const {
    RatFunc d = density_.derivative(var) / density_;
    if (sqrt_mode_) d = d * Scalar(1, 2);
    return d;
}

std::string VolumeForm::str() const {
    return sqrt_mode_ ? "sqrt(" + density_.str() + ")" : density_.str();
}

// --------------------------------------------------------------- contractions

Multivector interior_form(const OneForm& alpha, const Multivector& P) {
    if (alpha.chart() != P.chart()) throw structural_error("chart mismatch in interior product");
    if (P.degree() == 0) throw structural_error("interior product of a degree-0 target");
    Multivector r(P.chart(), P.degree() - 1);
    for (const auto& [t, v] : P.components()) {
        for (size_t pos = 0; pos < t.size(); ++pos) {
            const RatFunc& a = alpha.comp(t[pos]);
            if (a.is_zero()) continue;
            IndexTuple s;
            s.reserve(t.size() - 1);
            for (size_t j = 0; j < t.size(); ++j)
                if (j != pos) s.push_back(t[j]);
            RatFunc c = a * v;
            if (pos % 2) c = -c;
            r.add_full(s, c);
        }
    }
    return r;
}

SymCovariant interior_vector(const Multivector& X, const SymCovariant& G) {
    if (X.chart() != G.chart()) throw structural_error("chart mismatch in interior product");
    if (X.degree() != 1) throw structural_error("interior product needs a vector field");
    if (G.degree() == 0) throw structural_error("interior product of a degree-0 target");
    SymCovariant r(G.chart(), G.degree() - 1);
    Scalar k(static_cast<long>(G.degree()));
    for (const auto& [t, v] : G.components()) {
        for (size_t pos = 0; pos < t.size(); ++pos) {
            if (pos > 0 && t[pos] == t[pos - 1]) continue; // each distinct value once
            RatFunc x = X.component({t[pos]});
            if (x.is_zero()) continue;
            IndexTuple s;
            s.reserve(t.size() - 1);
            for (size_t j = 0; j < t.size(); ++j)
                if (j != pos) s.push_back(t[j]);
            r.add_sorted(s, x * v * k);
        }
    }
    return r;
}

Multivector sharp(const Multivector& w, const OneForm& alpha) {
    if (w.degree() != 2) throw structural_error("sharp expects a bivector");
    if (w.chart() != alpha.chart()) throw structural_error("chart mismatch in sharp");
    Multivector X(w.chart(), 1);
    for (const auto& [t, c] : w.components()) {
        int i = t[0], j = t[1];
        X.add_full({j}, alpha.comp(i) * c);
        X.add_full({i}, -(alpha.comp(j) * c));
    }
    return X;
}

RatFunc bivector_eval(const Multivector& w, const OneForm& alpha, const OneForm& beta) {
    if (w.degree() != 2) throw structural_error("bivector_eval expects a bivector");
    return w.pair({alpha.components(), beta.components()});
}

} // namespace plift

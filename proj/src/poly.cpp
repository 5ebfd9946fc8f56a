#include "plift/poly.hpp"

#include <algorithm>
#include <sstream>

#include "plift/parallel.hpp"

namespace plift {

Poly::Poly(ChartPtr chart, const Scalar& c) : chart_(std::move(chart)) {
    if (!plift::is_zero(c)) terms_.emplace(Exponents(static_cast<size_t>(chart_->arity()), 0u), c);
}

Poly Poly::variable(ChartPtr chart, int var, uint32_t power) {
    if (var < 0 || var >= chart->arity()) throw structural_error("variable index out of range");
    Poly p(chart);
    Exponents e(static_cast<size_t>(chart->arity()), 0u);
    e[static_cast<size_t>(var)] = power;
    if (power == 0)
        p.terms_.emplace(Exponents(static_cast<size_t>(chart->arity()), 0u), Scalar(1));
    else
        p.terms_.emplace(std::move(e), Scalar(1));
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && total_degree(terms_.begin()->first) == 0;
}

Scalar Poly::constant_value() const {
    if (terms_.empty()) return Scalar(0);
    if (!is_constant()) throw arithmetic_error("polynomial is not constant");
    return terms_.begin()->second;
}

const Exponents& Poly::leading_exponents() const {
    if (terms_.empty()) throw arithmetic_error("zero polynomial has no leading term");
    return terms_.rbegin()->first;
}

const Scalar& Poly::leading_coefficient() const {
    if (terms_.empty()) throw arithmetic_error("zero polynomial has no leading term");
    return terms_.rbegin()->second;
}

uint32_t Poly::degree() const { return terms_.empty() ? 0u : total_degree(terms_.rbegin()->first); }

uint32_t Poly::degree_in(int var) const {
    uint32_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<size_t>(var)]);
    return d;
}

void Poly::add_term(const Exponents& e, const Scalar& c) {
    if (plift::is_zero(c)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (plift::is_zero(it->second)) terms_.erase(it);
    }
}

void Poly::check_same_chart(const Poly& o) const {
    if (chart_ != o.chart_)
        throw structural_error("chart mismatch: '" + (chart_ ? chart_->name() : "<null>") + "' vs '" +
                               (o.chart_ ? o.chart_->name() : "<null>") + "'");
}

Poly Poly::operator-() const {
    Poly r(chart_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    check_same_chart(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    check_same_chart(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Poly& Poly::operator*=(const Scalar& c) {
    if (plift::is_zero(c)) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

namespace kernels {

namespace {
inline Exponents add_exponents(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline void accumulate(Poly::TermMap& m, const Exponents& e, const Scalar& c) {
    auto it = m.find(e);
    if (it == m.end()) {
        m.emplace(e, c);
    } else {
        it->second += c;
        if (plift::is_zero(it->second)) m.erase(it);
    }
}

void merge_into(Poly::TermMap& dst, Poly::TermMap& src) {
    if (dst.empty()) {
        dst.swap(src);
        return;
    }
    for (auto& [e, c] : src) accumulate(dst, e, c);
    src.clear();
}
} // namespace

Poly::TermMap mul_terms_serial(const Poly::TermMap& a, const Poly::TermMap& b) {
    Poly::TermMap r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) accumulate(r, add_exponents(ea, eb), ca * cb);
    return r;
}

Poly::TermMap mul_terms_parallel(const Poly::TermMap& a, const Poly::TermMap& b) {
    std::vector<const Poly::TermMap::value_type*> av;
    av.reserve(a.size());
    for (const auto& t : a) av.push_back(&t);

    size_t nchunks = std::max<size_t>(1, std::min<size_t>(av.size(), static_cast<size_t>(par::max_threads()) * 4));
    size_t chunk = (av.size() + nchunks - 1) / nchunks;
    std::vector<Poly::TermMap> partials(nchunks);

    par::parallel_for(nchunks, [&](size_t ci) {
        size_t lo = ci * chunk, hi = std::min(av.size(), lo + chunk);
        Poly::TermMap& local = partials[ci];
        for (size_t i = lo; i < hi; ++i)
            for (const auto& [eb, cb] : b) accumulate(local, add_exponents(av[i]->first, eb), av[i]->second * cb);
    });

    Poly::TermMap r;
    for (auto& part : partials) merge_into(r, part);
    return r;
}

} // namespace kernels

Poly operator*(const Poly& a, const Poly& b) {
    a.check_same_chart(b);
    Poly r(a.chart_);
    if (a.terms_.empty() || b.terms_.empty()) return r;
    // The parallel path only pays off on large products.
    const size_t kParallelThreshold = 4096;
    if (par::enabled() && a.terms_.size() * b.terms_.size() >= kParallelThreshold)
        r.terms_ = kernels::mul_terms_parallel(a.terms_, b.terms_);
    else
        r.terms_ = kernels::mul_terms_serial(a.terms_, b.terms_);
    return r;
}

bool Poly::operator==(const Poly& o) const {
    if (chart_ != o.chart_) return false;
    if (terms_.size() != o.terms_.size()) return false;
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt)
        if (it->first != jt->first || it->second != jt->second) return false;
    return true;
}

Poly Poly::pow(uint32_t k) const {
    Poly r = Poly::constant(chart_, Scalar(1));
    Poly base = *this;
    while (k > 0) {
        if (k & 1u) r = r * base;
        base = (k >>= 1) ? base * base : base;
    }
    return r;
}

Poly Poly::derivative(int var) const {
    if (var < 0 || var >= chart_->arity()) throw structural_error("unknown variable index in derivative");
    Poly r(chart_);
    for (const auto& [e, c] : terms_) {
        uint32_t k = e[static_cast<size_t>(var)];
        if (k == 0) continue;
        Exponents d = e;
        d[static_cast<size_t>(var)] = k - 1;
        r.add_term(d, c * Scalar(static_cast<long>(k)));
    }
    return r;
}

Poly Poly::coefficient_of(int var, uint32_t k) const {
    Poly r(chart_);
    for (const auto& [e, c] : terms_) {
        if (e[static_cast<size_t>(var)] != k) continue;
        Exponents d = e;
        d[static_cast<size_t>(var)] = 0;
        r.add_term(d, c);
    }
    return r;
}

Poly Poly::on_chart(const ChartPtr& target, const std::vector<int>& slot_map) const {
    Poly r(target);
    for (const auto& [e, c] : terms_) {
        Exponents d(static_cast<size_t>(target->arity()), 0u);
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            int t = slot_map[i];
            if (t < 0) throw structural_error("polynomial depends on a variable absent from the target chart");
            d[static_cast<size_t>(t)] = e[i];
        }
        r.add_term(d, c);
    }
    return r;
}

Poly Poly::lift_to_tangent() const {
    ChartPtr t = chart_->tangent();
    std::vector<int> slot_map(static_cast<size_t>(chart_->arity()));
    for (int i = 0; i < chart_->arity(); ++i) slot_map[static_cast<size_t>(i)] = i;
    return on_chart(t, slot_map);
}

Poly Poly::drop_to_base() const {
    ChartPtr b = chart_->base();
    std::vector<int> slot_map(static_cast<size_t>(chart_->arity()), -1);
    for (int i = 0; i < b->arity(); ++i) slot_map[static_cast<size_t>(i)] = i;
    return on_chart(b, slot_map);
}

Scalar Poly::scalar_content() const {
    if (terms_.empty()) return Scalar(1);
    mpz_class num_gcd(0), den_lcm(1);
    for (const auto& [e, c] : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Scalar content(num_gcd, den_lcm);
    content.canonicalize();
    if (sgn(leading_coefficient()) < 0) content = -content;
    return content;
}

Poly Poly::divide_by_scalar(const Scalar& c) const {
    if (plift::is_zero(c)) throw arithmetic_error("division by zero scalar");
    Poly r(chart_);
    for (const auto& [e, v] : terms_) r.terms_.emplace(e, v / c);
    return r;
}

Poly Poly::primitive_part() const {
    if (terms_.empty()) return *this;
    return divide_by_scalar(scalar_content());
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Descending grlex order.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Exponents& e = it->first;
        Scalar c = it->second;
        bool neg = sgn(c) < 0;
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        if (neg) c = -c;
        std::string mono;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += chart_->var_name(static_cast<int>(i));
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty()) {
            os << to_string(c);
        } else if (c == 1) {
            os << mono;
        } else {
            os << to_string(c) << "*" << mono;
        }
    }
    return os.str();
}

namespace {

inline bool divides(const Exponents& a, const Exponents& b) {
    // a | b slot-wise
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline Exponents sub_exponents(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

// Univariate-in-var view helpers for the gcd recursion.
Poly leading_coeff_in(const Poly& p, int var, uint32_t deg) { return p.coefficient_of(var, deg); }

// Pseudo-remainder lc(g)^{delta+1} f mod g with respect to var (the exact
// scaling the subresultant recurrence needs).
Poly pseudo_remainder(Poly f, const Poly& g, int var) {
    uint32_t dg = g.degree_in(var);
    Poly lc_g = leading_coeff_in(g, var, dg);
    uint32_t delta = f.degree_in(var) >= dg ? f.degree_in(var) - dg : 0;
    uint32_t steps = 0;
    while (!f.is_zero()) {
        uint32_t df = f.degree_in(var);
        if (df < dg) break;
        Poly lc_f = leading_coeff_in(f, var, df);
        Poly shift = Poly::variable(f.chart(), var, df - dg);
        f = f * lc_g - lc_f * shift * g;
        ++steps;
    }
    for (; steps < delta + 1; ++steps) f = f * lc_g;
    return f;
}

} // namespace

Poly divide_exact(const Poly& a, const Poly& b) {
    a.check_same_chart(b);
    if (b.is_zero()) throw arithmetic_error("exact division by zero polynomial");
    Poly r = a;
    Poly q(a.chart());
    const Exponents& lb = b.leading_exponents();
    const Scalar& cb = b.leading_coefficient();
    while (!r.is_zero()) {
        const Exponents& lr = r.leading_exponents();
        if (!divides(lb, lr)) throw arithmetic_error("inexact polynomial division");
        Exponents de = sub_exponents(lr, lb);
        Scalar dc = r.leading_coefficient() / cb;
        Poly t(a.chart());
        t.add_term(de, dc);
        q += t;
        r -= t * b;
    }
    return q;
}

namespace {

Poly gcd_impl(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    if (a.is_constant() || b.is_constant()) return Poly::constant(a.chart(), Scalar(1));

    // Lowest-index variable in use becomes the main variable.
    int var = -1;
    for (int i = 0; i < a.chart()->arity(); ++i) {
        if (a.depends_on(i) || b.depends_on(i)) {
            var = i;
            break;
        }
    }
    if (var < 0) return Poly::constant(a.chart(), Scalar(1)); // both constants

    // Contents with respect to var (gcd of the univariate coefficients).
    auto content_in = [var](const Poly& p) {
        Poly c(p.chart());
        uint32_t d = p.degree_in(var);
        for (uint32_t k = 0; k <= d; ++k) {
            Poly coeff = p.coefficient_of(var, k);
            if (coeff.is_zero()) continue;
            c = c.is_zero() ? coeff.primitive_part() : gcd_impl(c, coeff);
            if (c.is_constant()) return Poly::constant(p.chart(), Scalar(1));
        }
        return c;
    };

    Poly ca = content_in(a), cb = content_in(b);
    Poly f = divide_exact(a, ca).primitive_part();
    Poly s = divide_exact(b, cb).primitive_part();
    if (f.degree_in(var) < s.degree_in(var)) std::swap(f, s);

    // Subresultant polynomial remainder sequence: coefficient growth is
    // controlled by the exact g, h divisors instead of per-step contents.
    Poly g = Poly::constant(a.chart(), Scalar(1));
    Poly h = g;
    Poly last = s;
    for (;;) {
        if (s.degree_in(var) == 0) {
            // A nonzero var-free remainder: var-primitive inputs are coprime.
            last = Poly::constant(a.chart(), Scalar(1));
            break;
        }
        uint32_t delta = f.degree_in(var) - s.degree_in(var);
        Poly r = pseudo_remainder(f, s, var);
        if (r.is_zero()) {
            last = s;
            break;
        }
        f = s;
        s = divide_exact(r, g * h.pow(delta));
        g = leading_coeff_in(f, var, f.degree_in(var));
        if (delta > 0) h = delta == 1 ? g : divide_exact(g.pow(delta), h.pow(delta - 1));
    }
    // The var-degree-positive gcd is content-free in var only up to content
    // introduced by the subresultant scaling; strip it.
    if (last.degree_in(var) > 0) last = divide_exact(last, content_in(last));
    return (gcd_impl(ca, cb) * last).primitive_part();
}

} // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
    a.check_same_chart(b);
    if (a.is_zero() && b.is_zero()) return a;
    return gcd_impl(a, b).primitive_part();
}

} // namespace plift

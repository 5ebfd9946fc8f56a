#include "plift/model.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace plift {

// ---------------------------------------------------------------------- Model

ChartPtr Model::add_chart(const std::string& name, const std::vector<std::string>& vars) {
    if (has_chart(name)) throw parse_error("duplicate definition of chart '" + name + "'");
    ChartPtr c = Chart::make_base(name, vars);
    charts_.emplace_back(name, c);
    return c;
}

bool Model::has_chart(const std::string& name) const {
    for (const auto& [n, c] : charts_)
        if (n == name) return true;
    return false;
}

ChartPtr Model::chart(const std::string& spec) const {
    std::string name = spec;
    bool tangent = false;
    if (spec.size() > 2 && spec.substr(0, 2) == "T ") {
        tangent = true;
        name = spec.substr(2);
    }
    for (const auto& [n, c] : charts_)
        if (n == name) return tangent ? c->tangent() : c;
    throw parse_error("unknown chart '" + name + "'");
}

void Model::add_object(const std::string& name, ObjectData data) {
    if (find(name)) throw parse_error("duplicate definition of '" + name + "'");
    objects_.push_back(ModelObject{name, std::move(data)});
}

const ModelObject* Model::find(const std::string& name) const {
    for (const auto& o : objects_)
        if (o.name == name) return &o;
    return nullptr;
}

const ModelObject& Model::require(const std::string& name) const {
    const ModelObject* o = find(name);
    if (!o) throw usage_error("unknown object '" + name + "'");
    return *o;
}

// ---------------------------------------------------------------------- lexer

namespace {

enum class Tok { ident, integer, punct, newline, end };

struct Token {
    Tok kind = Tok::end;
    std::string text;
    long value = 0;
    int line = 0, col = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }
    Token next() {
        Token t = tok_;
        advance();
        return t;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw parse_error("line " + std::to_string(tok_.line) + ", col " + std::to_string(tok_.col) + ": " + msg);
    }

private:
    void advance() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
                continue;
            }
            if (c == ' ' || c == '\t' || c == '\r') {
                ++pos_;
                ++col_;
                continue;
            }
            break;
        }
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= text_.size()) {
            tok_.kind = Tok::end;
            tok_.text.clear();
            return;
        }
        char c = text_[pos_];
        if (c == '\n') {
            ++pos_;
            ++line_;
            col_ = 1;
            tok_.kind = Tok::newline;
            tok_.text = "\n";
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            tok_.kind = Tok::ident;
            tok_.text = text_.substr(start, pos_ - start);
            col_ += static_cast<int>(pos_ - start);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            tok_.kind = Tok::integer;
            tok_.text = text_.substr(start, pos_ - start);
            tok_.value = std::stol(tok_.text);
            col_ += static_cast<int>(pos_ - start);
            return;
        }
        static const std::string punct = "[]{}(),;=+-*/^";
        if (punct.find(c) != std::string::npos) {
            tok_.kind = Tok::punct;
            tok_.text = std::string(1, c);
            ++pos_;
            ++col_;
            return;
        }
        throw parse_error("line " + std::to_string(line_) + ", col " + std::to_string(col_) +
                          ": unexpected character '" + std::string(1, c) + "'");
    }

    const std::string& text_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

// ---------------------------------------------------- expression parser (Pratt)

class ExprParser {
public:
    ExprParser(Lexer& lex, const ChartPtr& chart) : lex_(lex), chart_(chart) {}

    RatFunc parse() { return parse_sum(); }

private:
    bool is_punct(const std::string& p) const { return lex_.peek().kind == Tok::punct && lex_.peek().text == p; }

    RatFunc parse_sum() {
        RatFunc acc = parse_product();
        while (is_punct("+") || is_punct("-")) {
            bool minus = lex_.next().text == "-";
            skip_newlines();
            RatFunc rhs = parse_product();
            acc = minus ? acc - rhs : acc + rhs;
        }
        return acc;
    }

    RatFunc parse_product() {
        RatFunc acc = parse_unary();
        while (is_punct("*") || is_punct("/")) {
            bool div = lex_.next().text == "/";
            skip_newlines();
            RatFunc rhs = parse_unary();
            if (div) {
                if (rhs.is_zero()) lex_.fail("division by zero");
                acc = acc / rhs;
            } else {
                acc = acc * rhs;
            }
        }
        return acc;
    }

    RatFunc parse_unary() {
        if (is_punct("-")) {
            lex_.next();
            return -parse_unary();
        }
        if (is_punct("+")) lex_.next();
        return parse_power();
    }

    RatFunc parse_power() {
        RatFunc base = parse_atom();
        if (is_punct("^")) {
            lex_.next();
            if (lex_.peek().kind != Tok::integer) lex_.fail("exponent must be a non-negative integer");
            long e = lex_.next().value;
            return base.pow(static_cast<uint32_t>(e));
        }
        return base;
    }

    RatFunc parse_atom() {
        const Token& t = lex_.peek();
        if (t.kind == Tok::integer) {
            long v = lex_.next().value;
            return RatFunc(chart_, Scalar(v));
        }
        if (t.kind == Tok::ident) {
            int idx = chart_->var_index(t.text);
            if (idx < 0) lex_.fail("unknown identifier '" + t.text + "' on chart '" + chart_->name() + "'");
            lex_.next();
            return RatFunc::variable(chart_, idx);
        }
        if (is_punct("(")) {
            lex_.next();
            skip_newlines();
            RatFunc inner = parse_sum();
            if (!is_punct(")")) lex_.fail("expected ')'");
            lex_.next();
            return inner;
        }
        lex_.fail("expected an expression");
    }

    void skip_newlines() {
        while (lex_.peek().kind == Tok::newline) lex_.next();
    }

    Lexer& lex_;
    ChartPtr chart_;
};

// --------------------------------------------------------------- model parser

struct EntryKey {
    bool density = false;
    bool sqrt_density = false;
    IndexTuple indices; // 0-based
};

class ModelParser {
public:
    explicit ModelParser(const std::string& text) : lex_(text) {}

    Model parse() {
        Model model;
        for (;;) {
            skip_newlines();
            if (lex_.peek().kind == Tok::end) break;
            statement(model);
        }
        return model;
    }

private:
    void skip_newlines() {
        while (lex_.peek().kind == Tok::newline) lex_.next();
    }

    std::string expect_ident(const std::string& what) {
        if (lex_.peek().kind != Tok::ident) lex_.fail("expected " + what);
        return lex_.next().text;
    }

    void expect_punct(const std::string& p) {
        if (lex_.peek().kind != Tok::punct || lex_.peek().text != p) lex_.fail("expected '" + p + "'");
        lex_.next();
    }

    long expect_int(const std::string& what) {
        if (lex_.peek().kind != Tok::integer) lex_.fail("expected " + what);
        return lex_.next().value;
    }

    void statement(Model& model) {
        std::string kw = expect_ident("a statement keyword");
        if (kw == "manifold") {
            manifold(model);
            return;
        }
        int arg = 0;
        if (kw == "multivector" || kw == "symtensor") {
            expect_punct("(");
            arg = static_cast<int>(expect_int("a degree"));
            expect_punct(")");
        }
        object_statement(model, kw, arg);
    }

    void manifold(Model& model) {
        std::string name = expect_ident("a manifold name");
        if (name == "T") lex_.fail("'T' is reserved for tangent chart references");
        if (expect_ident("'dim'") != "dim") lex_.fail("expected 'dim'");
        long n = expect_int("the dimension");
        if (n < 1) lex_.fail("dimension must be positive");
        if (expect_ident("'coords'") != "coords") lex_.fail("expected 'coords'");
        std::vector<std::string> vars;
        while (lex_.peek().kind == Tok::ident) vars.push_back(lex_.next().text);
        if (static_cast<long>(vars.size()) != n)
            lex_.fail("expected " + std::to_string(n) + " coordinate names, got " + std::to_string(vars.size()));
        if (lex_.peek().kind != Tok::newline && lex_.peek().kind != Tok::end) lex_.fail("unexpected token after coordinates");
        model.add_chart(name, vars);
    }

    ChartPtr chart_spec(Model& model) {
        std::string first = expect_ident("a chart name");
        if (first == "T") {
            std::string base = expect_ident("a chart name after 'T'");
            return model.chart("T " + base);
        }
        return model.chart(first);
    }

    EntryKey entry_key() {
        EntryKey key;
        if (lex_.peek().kind == Tok::ident) {
            std::string kw = lex_.next().text;
            if (kw == "density") {
                key.density = true;
            } else if (kw == "sqrtdensity") {
                key.density = key.sqrt_density = true;
            } else {
                lex_.fail("expected '[indices]', 'density' or 'sqrtdensity'");
            }
            return key;
        }
        expect_punct("[");
        for (;;) {
            long idx = expect_int("an index");
            key.indices.push_back(static_cast<int>(idx) - 1);
            if (lex_.peek().kind == Tok::punct && lex_.peek().text == ",") {
                lex_.next();
                continue;
            }
            break;
        }
        expect_punct("]");
        return key;
    }

    void object_statement(Model& model, const std::string& kind, int arg) {
        std::string name = expect_ident("an object name");
        if (expect_ident("'on'") != "on") lex_.fail("expected 'on'");
        ChartPtr chart = chart_spec(model);
        bool torsion = false;
        if (lex_.peek().kind == Tok::ident && lex_.peek().text == "torsion") {
            if (kind != "linconn") lex_.fail("'torsion' applies to linconn only");
            torsion = true;
            lex_.next();
        }
        skip_newlines();
        expect_punct("{");

        // Collected entries.
        std::vector<std::pair<EntryKey, RatFunc>> entries;
        for (;;) {
            skip_newlines();
            if (lex_.peek().kind == Tok::punct && lex_.peek().text == "}") {
                lex_.next();
                break;
            }
            EntryKey key = entry_key();
            expect_punct("=");
            skip_newlines();
            ExprParser ep(lex_, chart);
            RatFunc value = ep.parse();
            skip_newlines();
            if (lex_.peek().kind == Tok::punct && lex_.peek().text == ";") lex_.next();
            entries.emplace_back(std::move(key), std::move(value));
        }
        build_object(model, kind, arg, name, chart, torsion, entries);
    }

    void check_range(const IndexTuple& t, int arity, size_t expected) {
        if (t.size() != expected)
            lex_.fail("expected " + std::to_string(expected) + " indices, got " + std::to_string(t.size()));
        for (int i : t)
            if (i < 0 || i >= arity) lex_.fail("index out of declared range");
    }

    void build_object(Model& model, const std::string& kind, int arg, const std::string& name, const ChartPtr& chart,
                      bool torsion, const std::vector<std::pair<EntryKey, RatFunc>>& entries) {
        auto no_density = [&]() {
            for (const auto& [k, v] : entries)
                if (k.density) lex_.fail("'density' entries belong to volume objects");
        };
        auto reject_duplicates = [&](auto normalize) {
            std::vector<IndexTuple> seen;
            for (const auto& [k, v] : entries) {
                IndexTuple t = normalize(k.indices);
                for (const auto& s : seen)
                    if (s == t) lex_.fail("duplicate component assignment");
                seen.push_back(t);
            }
        };

        if (kind == "bivector" || kind == "vector" || kind == "multivector") {
            no_density();
            int degree = kind == "bivector" ? 2 : (kind == "vector" ? 1 : arg);
            if (degree < 0 || degree > chart->arity()) lex_.fail("multivector degree out of range");
            Multivector m(chart, degree);
            // Any ordering of distinct indices is accepted (the sign folds
            // into the stored component); the same slot set twice is not.
            reject_duplicates([](const IndexTuple& t) {
                IndexTuple s = t;
                std::sort(s.begin(), s.end());
                return s;
            });
            for (const auto& [k, v] : entries) {
                check_range(k.indices, chart->arity(), static_cast<size_t>(degree));
                IndexTuple sorted = k.indices;
                std::sort(sorted.begin(), sorted.end());
                for (size_t i = 1; i < sorted.size(); ++i)
                    if (sorted[i] == sorted[i - 1]) lex_.fail("repeated slot in a skew tensor component");
                m.add_full(k.indices, v);
            }
            model.add_object(name, std::move(m));
        } else if (kind == "oneform") {
            no_density();
            OneForm a(chart);
            reject_duplicates([](const IndexTuple& t) { return t; });
            for (const auto& [k, v] : entries) {
                check_range(k.indices, chart->arity(), 1);
                a.comp(k.indices[0]) = v;
            }
            model.add_object(name, std::move(a));
        } else if (kind == "symtensor") {
            no_density();
            if (arg < 0 || arg > 8) lex_.fail("symtensor degree out of range");
            SymCovariant g(chart, arg);
            reject_duplicates([](const IndexTuple& t) { return t; });
            for (const auto& [k, v] : entries) {
                check_range(k.indices, chart->arity(), static_cast<size_t>(arg));
                for (size_t i = 1; i < k.indices.size(); ++i)
                    if (k.indices[i] < k.indices[i - 1])
                        lex_.fail("symmetric components use non-decreasing independent slots only");
                g.set_component(k.indices, v);
            }
            model.add_object(name, std::move(g));
        } else if (kind == "linconn") {
            no_density();
            if (chart->is_tangent()) lex_.fail("linconn lives on a base chart");
            LinearConnection c(chart, !torsion);
            reject_duplicates([&](const IndexTuple& t) { return t; });
            for (const auto& [k, v] : entries) {
                check_range(k.indices, chart->arity(), 3);
                if (!torsion && k.indices[1] > k.indices[2])
                    lex_.fail("torsion-free symbols use i <= j independent slots only");
                c.set_gamma(k.indices[0], k.indices[1], k.indices[2], v);
            }
            model.add_object(name, std::move(c));
        } else if (kind == "nonlinconn") {
            no_density();
            if (!chart->is_tangent()) lex_.fail("nonlinconn lives on a tangent chart");
            NonlinearConnection c(chart);
            reject_duplicates([](const IndexTuple& t) { return t; });
            for (const auto& [k, v] : entries) {
                if (k.indices.size() != 2) lex_.fail("nonlinconn entries are [j,i]");
                for (int i : k.indices)
                    if (i < 0 || i >= chart->base_dim()) lex_.fail("index out of declared range");
                c.set_gamma(k.indices[0], k.indices[1], v);
            }
            model.add_object(name, std::move(c));
        } else if (kind == "metric") {
            no_density();
            Metric g(chart);
            reject_duplicates([](const IndexTuple& t) { return t; });
            for (const auto& [k, v] : entries) {
                check_range(k.indices, chart->arity(), 2);
                if (k.indices[0] > k.indices[1]) lex_.fail("metric components use i <= j independent slots only");
                g.set_g(k.indices[0], k.indices[1], v);
            }
            if (g.determinant().is_zero()) lex_.fail("metric must be nondegenerate");
            model.add_object(name, std::move(g));
        } else if (kind == "volume") {
            if (entries.size() != 1 || !entries[0].first.density)
                lex_.fail("volume objects take exactly one 'density' or 'sqrtdensity' entry");
            const auto& [k, v] = entries[0];
            if (v.is_zero()) lex_.fail("volume density must be nonzero");
            model.add_object(name, VolumeForm(chart, v, k.sqrt_density));
        } else {
            lex_.fail("unknown object kind '" + kind + "'");
        }
    }

    Lexer lex_;
};

} // namespace

Model parse_model(const std::string& text) {
    ModelParser p(text);
    return p.parse();
}

RatFunc parse_expression(const std::string& text, const ChartPtr& chart) {
    Lexer lex(text);
    ExprParser ep(lex, chart);
    RatFunc r = ep.parse();
    if (lex.peek().kind != Tok::end && lex.peek().kind != Tok::newline)
        throw parse_error("trailing input after expression");
    return r;
}

// -------------------------------------------------------------------- printer

namespace {

std::string chart_spec_name(const ChartPtr& chart) {
    return chart->is_tangent() ? "T " + chart->base()->name() : chart->name();
}

void print_components(std::ostringstream& os, const std::map<IndexTuple, RatFunc>& comps) {
    os << " {\n";
    for (const auto& [t, v] : comps) {
        os << "  [";
        for (size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << (t[i] + 1);
        os << "] = " << v.str() << ";\n";
    }
    os << "}\n";
}

} // namespace

std::string print_object(const ModelObject& obj) {
    std::ostringstream os;
    const std::string& name = obj.name;
    if (const auto* m = std::get_if<Multivector>(&obj.data)) {
        if (m->degree() == 2)
            os << "bivector " << name;
        else if (m->degree() == 1)
            os << "vector " << name;
        else
            os << "multivector(" << m->degree() << ") " << name;
        os << " on " << chart_spec_name(m->chart());
        print_components(os, m->components());
    } else if (const auto* a = std::get_if<OneForm>(&obj.data)) {
        os << "oneform " << name << " on " << chart_spec_name(a->chart()) << " {\n";
        for (int i = 0; i < a->chart()->arity(); ++i)
            if (!a->comp(i).is_zero()) os << "  [" << (i + 1) << "] = " << a->comp(i).str() << ";\n";
        os << "}\n";
    } else if (const auto* g = std::get_if<SymCovariant>(&obj.data)) {
        os << "symtensor(" << g->degree() << ") " << name << " on " << chart_spec_name(g->chart());
        print_components(os, g->components());
    } else if (const auto* c = std::get_if<LinearConnection>(&obj.data)) {
        os << "linconn " << name << " on " << chart_spec_name(c->chart());
        if (!c->torsion_free()) os << " torsion";
        os << " {\n";
        int n = c->dim();
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = (c->torsion_free() ? i : 0); j < n; ++j)
                    if (!c->gamma(k, i, j).is_zero())
                        os << "  [" << (k + 1) << "," << (i + 1) << "," << (j + 1)
                           << "] = " << c->gamma(k, i, j).str() << ";\n";
        os << "}\n";
    } else if (const auto* nc = std::get_if<NonlinearConnection>(&obj.data)) {
        os << "nonlinconn " << name << " on " << chart_spec_name(nc->chart()) << " {\n";
        int n = nc->dim();
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                if (!nc->gamma(j, i).is_zero())
                    os << "  [" << (j + 1) << "," << (i + 1) << "] = " << nc->gamma(j, i).str() << ";\n";
        os << "}\n";
    } else if (const auto* mt = std::get_if<Metric>(&obj.data)) {
        os << "metric " << name << " on " << chart_spec_name(mt->chart()) << " {\n";
        int n = mt->dim();
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                if (!mt->g(i, j).is_zero())
                    os << "  [" << (i + 1) << "," << (j + 1) << "] = " << mt->g(i, j).str() << ";\n";
        os << "}\n";
    } else if (const auto* v = std::get_if<VolumeForm>(&obj.data)) {
        os << "volume " << name << " on " << chart_spec_name(v->chart()) << " {\n  "
           << (v->sqrt_mode() ? "sqrtdensity" : "density") << " = " << v->density().str() << ";\n}\n";
    }
    return os.str();
}

std::string Model::print() const {
    std::ostringstream os;
    for (const auto& [name, chart] : charts_) {
        os << "manifold " << name << " dim " << chart->arity() << " coords";
        for (const auto& v : chart->vars()) os << " " << v;
        os << "\n";
    }
    for (const auto& o : objects_) os << print_object(o);
    return os.str();
}

} // namespace plift

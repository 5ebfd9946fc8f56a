#include <json.hpp>

#include "plift/model.hpp"
#include "plift/scenario.hpp"

namespace plift {

namespace {

using nlohmann::json;

const Multivector& as_multivector(const ModelObject& o, int degree = -1) {
    const auto* m = std::get_if<Multivector>(&o.data);
    if (!m) throw usage_error("object '" + o.name + "' is not a multivector");
    if (degree >= 0 && m->degree() != degree)
        throw usage_error("object '" + o.name + "' has degree " + std::to_string(m->degree()) + ", expected " +
                          std::to_string(degree));
    return *m;
}

const OneForm& as_oneform(const ModelObject& o) {
    const auto* a = std::get_if<OneForm>(&o.data);
    if (!a) throw usage_error("object '" + o.name + "' is not a one-form");
    return *a;
}

const SymCovariant& as_symtensor(const ModelObject& o) {
    const auto* g = std::get_if<SymCovariant>(&o.data);
    if (!g) throw usage_error("object '" + o.name + "' is not a symtensor");
    return *g;
}

const LinearConnection& as_linconn(const ModelObject& o) {
    const auto* c = std::get_if<LinearConnection>(&o.data);
    if (!c) throw usage_error("object '" + o.name + "' is not a linconn");
    return *c;
}

const Metric& as_metric(const ModelObject& o) {
    const auto* g = std::get_if<Metric>(&o.data);
    if (!g) throw usage_error("object '" + o.name + "' is not a metric");
    return *g;
}

json witness_json(const Witness& w) {
    json idx = json::array();
    for (int i : w.indices) idx.push_back(i + 1);
    return json{{"indices", idx}, {"expr", w.value.str()}};
}

CommandOutcome report_outcome(const Report& rep, const std::string& format,
                              const std::vector<std::string>& info = {}) {
    CommandOutcome out;
    out.exit_code = rep.all_pass() ? 0 : 1;
    if (format == "json") {
        json lines = json::array();
        for (const auto& c : rep.checks) {
            json l{{"name", c.name}, {"status", c.pass ? "PASS" : "FAIL"}};
            if (!c.pass && c.witness) l["witness"] = witness_json(*c.witness);
            lines.push_back(std::move(l));
        }
        json j{{"report", lines}};
        if (!info.empty()) j["info"] = info;
        out.output = j.dump(2) + "\n";
    } else {
        for (const auto& s : info) out.output += s + "\n";
        out.output += rep.str();
    }
    return out;
}

CommandOutcome model_outcome(const Model& model, const std::string& format) {
    CommandOutcome out;
    out.exit_code = 0;
    if (format == "json")
        out.output = json{{"model", model.print()}}.dump(2) + "\n";
    else
        out.output = model.print();
    return out;
}

VolumeForm resolve_volume(const Model& model, const std::string& spec) {
    auto colon = spec.find(':');
    if (colon != std::string::npos) {
        std::string kind = spec.substr(0, colon);
        std::string name = spec.substr(colon + 1);
        const Metric& g = as_metric(model.require(name));
        if (kind == "sasaki") return sasaki_volume(g);
        if (kind == "riemann") return riemannian_volume(g);
        throw usage_error("unknown volume constructor '" + kind + "' (use sasaki:g or riemann:g)");
    }
    const auto* v = std::get_if<VolumeForm>(&model.require(spec).data);
    if (!v) throw usage_error("object '" + spec + "' is not a volume");
    return *v;
}

std::string option_value(const std::vector<std::string>& args, size_t& i, const std::string& opt) {
    if (i + 1 >= args.size()) throw usage_error("option " + opt + " needs a value");
    return args[++i];
}

NonlinearConnection resolve_nonlinear(const ModelObject& o) {
    if (const auto* nc = std::get_if<NonlinearConnection>(&o.data)) return *nc;
    if (const auto* lc = std::get_if<LinearConnection>(&o.data)) return NonlinearConnection::from_linear(*lc);
    throw usage_error("object '" + o.name + "' is not a connection");
}

} // namespace

CommandOutcome run_command(Model& model, const std::vector<std::string>& args, const std::string& format) {
    if (args.empty()) throw usage_error("no command given");
    const std::string& cmd = args[0];

    auto positional = [&](size_t k) -> const std::string& {
        size_t seen = 0;
        for (size_t i = 1; i < args.size(); ++i) {
            if (args[i].rfind("--", 0) == 0) {
                ++i; // skip option value
                continue;
            }
            if (seen == k) return args[i];
            ++seen;
        }
        throw usage_error("missing argument for '" + cmd + "'");
    };
    auto option = [&](const std::string& name) -> std::string {
        for (size_t i = 1; i < args.size(); ++i)
            if (args[i] == name) return option_value(args, i, name);
        throw usage_error("command '" + cmd + "' needs " + name);
    };

    if (cmd == "scenario") {
        Model m = scenario(positional(0));
        return model_outcome(m, format);
    }

    if (cmd == "check-poisson") {
        const Multivector& w = as_multivector(model.require(positional(0)), 2);
        Report rep;
        rep.checks.push_back(is_poisson(w));
        return report_outcome(rep, format);
    }

    if (cmd == "check-semi-poisson") {
        const Multivector& W = as_multivector(model.require(positional(0)), 2);
        if (!W.chart()->is_tangent()) throw usage_error("check-semi-poisson expects a tangent-chart bivector");
        Report rep = is_transversal_poisson(W, vertical_foliation(W.chart()));
        CheckResult verdict;
        verdict.name = "semi_poisson";
        verdict.pass = rep.all_pass();
        rep.checks.push_back(verdict);
        return report_outcome(rep, format);
    }

    if (cmd == "check-graded") {
        const Multivector& W = as_multivector(model.require(positional(0)), 2);
        GradedStructure parts = shape_analysis(W);
        std::vector<std::string> info{"shape: " + shape_name(parts.shape)};
        if (parts.shape == Shape::not_graded) {
            Report rep;
            CheckResult c;
            c.name = "graded_shape";
            c.pass = false;
            c.witness = parts.obstruction;
            rep.checks.push_back(std::move(c));
            return report_outcome(rep, format, info);
        }
        GradedOperators ops(parts);
        return report_outcome(ops.check_graded_poisson(), format, info);
    }

    if (cmd == "analyze") {
        const Multivector& W = as_multivector(model.require(positional(0)), 2);
        GradedStructure parts = shape_analysis(W);
        CommandOutcome out;
        std::vector<std::string> lines;
        lines.push_back("shape: " + shape_name(parts.shape));
        if (parts.shape == Shape::not_graded) {
            lines.push_back("obstruction: " + parts.obstruction->str());
            out.exit_code = 1;
        } else {
            for (const auto& [t, v] : parts.base_w.components())
                lines.push_back("w[" + std::to_string(t[0] + 1) + "," + std::to_string(t[1] + 1) + "] = " + v.str());
            int n = parts.n;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    if (!parts.phi(i, j).is_zero())
                        lines.push_back("phi[" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                        "] = " + parts.phi(i, j).str());
                    for (int a = 0; a < n; ++a)
                        if (!parts.a(i, j, a).is_zero())
                            lines.push_back("A[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                                            std::to_string(a + 1) + "] = " + parts.a(i, j, a).str());
                }
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    if (!parts.eta(i, j).is_zero())
                        lines.push_back("eta[" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                        "] = " + parts.eta(i, j).str());
                    for (int a = 0; a < n; ++a)
                        if (!parts.chi(i, j, a).is_zero())
                            lines.push_back("chi[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                                            std::to_string(a + 1) + "] = " + parts.chi(i, j, a).str());
                    for (int a = 0; a < n; ++a)
                        for (int b = a; b < n; ++b)
                            if (!parts.b(i, j, a, b).is_zero())
                                lines.push_back("B[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                                                std::to_string(a + 1) + "," + std::to_string(b + 1) +
                                                "] = " + parts.b(i, j, a, b).str());
                }
        }
        if (format == "json") {
            out.output = json{{"analysis", lines}}.dump(2) + "\n";
        } else {
            for (const auto& l : lines) out.output += l + "\n";
        }
        return out;
    }

    if (cmd == "lift") {
        const std::string& mode = positional(0);
        const std::string& name = positional(1);
        if (mode == "complete") {
            const Multivector& P = as_multivector(model.require(name));
            model.add_object(name + "_C", complete_lift(P));
        } else if (mode == "vertical") {
            const Multivector& P = as_multivector(model.require(name));
            model.add_object(name + "_V", vertical_lift(P));
        } else if (mode == "horizontal") {
            const Multivector& w = as_multivector(model.require(name), 2);
            NonlinearConnection N = resolve_nonlinear(model.require(option("--conn")));
            model.add_object(name + "_H", horizontal_lift_bivector(w, N));
        } else if (mode == "graded-nabla") {
            const Multivector& w = as_multivector(model.require(name), 2);
            const LinearConnection& C = as_linconn(model.require(option("--conn")));
            model.add_object(name + "_W", graded_nabla_lift(w, C));
        } else {
            throw usage_error("unknown lift '" + mode + "' (complete|vertical|horizontal|graded-nabla)");
        }
        return model_outcome(model, format);
    }

    if (cmd == "bracket") {
        const std::string& mode = positional(0);
        if (mode == "schouten") {
            const Multivector& P = as_multivector(model.require(positional(1)));
            const Multivector& Q = as_multivector(model.require(positional(2)));
            model.add_object("schouten_" + positional(1) + "_" + positional(2), schouten_bracket(P, Q));
        } else if (mode == "koszul") {
            const Multivector& w = as_multivector(model.require(positional(1)), 2);
            const OneForm& a = as_oneform(model.require(positional(2)));
            const OneForm& b = as_oneform(model.require(positional(3)));
            model.add_object("koszul_" + positional(2) + "_" + positional(3), koszul_bracket(w, a, b));
        } else if (mode == "symmetric") {
            const SymCovariant& G = as_symtensor(model.require(positional(1)));
            const SymCovariant& H = as_symtensor(model.require(positional(2)));
            std::string alg = option("--algebroid");
            AlgebroidPtr A;
            if (alg == "tangent") {
                A = LieAlgebroid::tangent(G.chart());
            } else if (alg.rfind("cotangent:", 0) == 0) {
                const Multivector& w = as_multivector(model.require(alg.substr(10)), 2);
                A = LieAlgebroid::cotangent(w);
            } else {
                throw usage_error("--algebroid takes tangent or cotangent:<bivector>");
            }
            AlgebroidSymTensor g = AlgebroidSymTensor::from_sym_covariant(A, G);
            AlgebroidSymTensor h = AlgebroidSymTensor::from_sym_covariant(A, H);
            model.add_object("sym_" + positional(1) + "_" + positional(2), sym_bracket(g, h).as_sym_covariant());
        } else {
            throw usage_error("unknown bracket '" + mode + "' (schouten|symmetric|koszul)");
        }
        return model_outcome(model, format);
    }

    if (cmd == "modular") {
        const Multivector& P = as_multivector(model.require(positional(0)), 2);
        VolumeForm mu = resolve_volume(model, option("--volume"));
        model.add_object("modular_" + positional(0), modular_field(P, mu));
        return model_outcome(model, format);
    }

    if (cmd == "curvature") {
        const ModelObject& o = model.require(option("--conn"));
        CommandOutcome out;
        std::vector<std::pair<IndexTuple, std::string>> comps;
        if (const auto* lc = std::get_if<LinearConnection>(&o.data)) {
            LinearCurvature R(*lc);
            int n = lc->dim();
            for (int k = 0; k < n; ++k)
                for (int h = 0; h < n; ++h)
                    for (int i = 0; i < n; ++i)
                        for (int j = i + 1; j < n; ++j)
                            if (!R.r(k, h, i, j).is_zero()) comps.push_back({{k, h, i, j}, R.r(k, h, i, j).str()});
        } else {
            NonlinearConnection N = resolve_nonlinear(o);
            NonlinearCurvature R(N);
            int n = N.dim();
            for (int k = 0; k < n; ++k)
                for (int i = 0; i < n; ++i)
                    for (int j = i + 1; j < n; ++j)
                        if (!R.r(k, i, j).is_zero()) comps.push_back({{k, i, j}, R.r(k, i, j).str()});
        }
        if (format == "json") {
            json arr = json::array();
            for (const auto& [t, e] : comps) {
                json idx = json::array();
                for (int i : t) idx.push_back(i + 1);
                arr.push_back(json{{"indices", idx}, {"expr", e}});
            }
            out.output = json{{"curvature", arr}}.dump(2) + "\n";
        } else {
            if (comps.empty()) out.output = "curvature: 0\n";
            for (const auto& [t, e] : comps) {
                std::string line = "R[";
                for (size_t i = 0; i < t.size(); ++i) line += (i ? "," : "") + std::to_string(t[i] + 1);
                out.output += line + "] = " + e + "\n";
            }
        }
        return out;
    }

    if (cmd == "compat") {
        const Multivector& P = as_multivector(model.require(positional(0)), 2);
        const Multivector& Q = as_multivector(model.require(positional(1)), 2);
        Report rep;
        rep.checks.push_back(compatibility_check(P, Q));
        return report_outcome(rep, format);
    }

    if (cmd == "check-horizontal") {
        const Multivector& w = as_multivector(model.require(positional(0)), 2);
        NonlinearConnection N = resolve_nonlinear(model.require(option("--conn")));
        return report_outcome(horizontal_poisson_condition(w, N), format);
    }

    throw usage_error("unknown command '" + cmd + "'");
}

} // namespace plift

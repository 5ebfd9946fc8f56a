#include "plift/scenario.hpp"

#include "plift/rng.hpp"

namespace plift {

namespace {

Model linear_model(const std::vector<std::vector<std::vector<Scalar>>>& c) {
    // Lie-Poisson bivector of structure constants c[i][j][k]: w^{ij} = c^{ij}_k x^k.
    int n = static_cast<int>(c.size());
    Model m;
    std::vector<std::string> vars;
    for (int i = 0; i < n; ++i) vars.push_back("x" + std::to_string(i + 1));
    ChartPtr chart = m.add_chart("M", vars);
    Multivector w(chart, 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Poly p(chart);
            for (int k = 0; k < n; ++k) {
                if (is_zero(c[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)])) continue;
                Exponents e(static_cast<size_t>(n), 0u);
                e[static_cast<size_t>(k)] = 1;
                p.add_term(e, c[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)]);
            }
            if (!p.is_zero()) w.set_component({i, j}, RatFunc(std::move(p)));
        }
    m.add_object("w", std::move(w));
    return m;
}

std::vector<std::vector<std::vector<Scalar>>> so3_constants() {
    std::vector<std::vector<std::vector<Scalar>>> c(
        3, std::vector<std::vector<Scalar>>(3, std::vector<Scalar>(3, Scalar(0))));
    // [e1,e2]=e3 and cyclic.
    c[0][1][2] = Scalar(1);
    c[1][0][2] = Scalar(-1);
    c[1][2][0] = Scalar(1);
    c[2][1][0] = Scalar(-1);
    c[2][0][1] = Scalar(1);
    c[0][2][1] = Scalar(-1);
    return c;
}

std::vector<std::vector<std::vector<Scalar>>> heisenberg_constants() {
    std::vector<std::vector<std::vector<Scalar>>> c(
        3, std::vector<std::vector<Scalar>>(3, std::vector<Scalar>(3, Scalar(0))));
    // [e1,e2]=e3 only.
    c[0][1][2] = Scalar(1);
    c[1][0][2] = Scalar(-1);
    return c;
}

Model symplectic_model(int n_pairs) {
    Model m;
    std::vector<std::string> vars;
    for (int i = 0; i < 2 * n_pairs; ++i) vars.push_back("x" + std::to_string(i + 1));
    ChartPtr chart = m.add_chart("M", vars);
    Multivector w(chart, 2);
    for (int p = 0; p < n_pairs; ++p) w.set_component({2 * p, 2 * p + 1}, RatFunc::one(chart));
    m.add_object("w", std::move(w));
    return m;
}

// Change of basis of structure constants by an invertible matrix B (with
// inverse Binv): c'^w_{uv} = B^a_u B^b_v c^s_{ab} (Binv)^w_s.
std::vector<std::vector<std::vector<Scalar>>> transform(const std::vector<std::vector<std::vector<Scalar>>>& c,
                                                        const std::vector<std::vector<Scalar>>& B,
                                                        const std::vector<std::vector<Scalar>>& Binv) {
    size_t n = c.size();
    std::vector<std::vector<std::vector<Scalar>>> out(
        n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, Scalar(0))));
    for (size_t u = 0; u < n; ++u)
        for (size_t v = 0; v < n; ++v)
            for (size_t w = 0; w < n; ++w) {
                Scalar acc(0);
                for (size_t a = 0; a < n; ++a)
                    for (size_t b = 0; b < n; ++b)
                        for (size_t s = 0; s < n; ++s) acc += B[a][u] * B[b][v] * c[a][b][s] * Binv[w][s];
                out[u][v][w] = acc;
            }
    return out;
}

Model random_linear(uint64_t seed) {
    Rng rng(seed * 0x51ed2701u + 17u);
    auto c = (seed % 2 == 0) ? so3_constants() : heisenberg_constants();
    size_t n = 3;
    // B and its inverse as a product of elementary shears (determinant 1).
    std::vector<std::vector<Scalar>> B(n, std::vector<Scalar>(n, Scalar(0)));
    std::vector<std::vector<Scalar>> Binv(n, std::vector<Scalar>(n, Scalar(0)));
    for (size_t i = 0; i < n; ++i) B[i][i] = Binv[i][i] = Scalar(1);
    for (int step = 0; step < 4; ++step) {
        size_t u = rng.below(n);
        size_t v = rng.below(n);
        if (u == v) continue;
        long k = rng.range(-2, 2);
        if (k == 0) continue;
        // B := B * E, E = I + k e_{uv}; Binv := E^{-1} * Binv.
        for (size_t r = 0; r < n; ++r) B[r][v] += Scalar(k) * B[r][u];
        for (size_t col = 0; col < n; ++col) Binv[u][col] -= Scalar(k) * Binv[v][col];
    }
    return linear_model(transform(c, B, Binv));
}

Model random_quadratic(uint64_t seed) {
    Rng rng(seed * 0x9137a3cdu + 5u);
    Model m;
    ChartPtr chart = m.add_chart("M", {"x1", "x2", "x3"});
    Multivector w(chart, 2);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            Poly p(chart);
            for (int a = 0; a < 3; ++a)
                for (int b = a; b < 3; ++b) {
                    long coeff = rng.range(-2, 2);
                    if (coeff == 0) continue;
                    Exponents e(3, 0u);
                    e[static_cast<size_t>(a)] += 1;
                    e[static_cast<size_t>(b)] += 1;
                    p.add_term(e, Scalar(coeff));
                }
            if (!p.is_zero()) w.set_component({i, j}, RatFunc(std::move(p)));
        }
    m.add_object("w", std::move(w));
    return m;
}

} // namespace

std::vector<std::string> scenario_base_names() {
    return {"so3", "symplectic2", "symplectic4", "heisenberg", "zero3", "random-linear(seed)", "random-quadratic(seed)"};
}

Model scenario(const std::string& name) {
    if (name == "so3") return linear_model(so3_constants());
    if (name == "heisenberg") return linear_model(heisenberg_constants());
    if (name == "symplectic2") return symplectic_model(1);
    if (name == "symplectic4") return symplectic_model(2);
    if (name == "zero3") {
        Model m;
        ChartPtr chart = m.add_chart("M", {"x1", "x2", "x3"});
        m.add_object("w", Multivector(chart, 2));
        return m;
    }
    auto parse_seeded = [&](const std::string& prefix) -> long {
        if (name.size() > prefix.size() + 1 && name.compare(0, prefix.size() + 1, prefix + "(") == 0 &&
            name.back() == ')') {
            std::string num = name.substr(prefix.size() + 1, name.size() - prefix.size() - 2);
            for (char ch : num)
                if (!std::isdigit(static_cast<unsigned char>(ch))) return -1;
            if (num.empty()) return -1;
            return std::stol(num);
        }
        return -1;
    };
    long seed = parse_seeded("random-linear");
    if (seed >= 0) return random_linear(static_cast<uint64_t>(seed));
    seed = parse_seeded("random-quadratic");
    if (seed >= 0) return random_quadratic(static_cast<uint64_t>(seed));
    throw usage_error("unknown scenario '" + name + "'");
}

} // namespace plift

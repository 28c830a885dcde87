#include "pgst/graph.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <utility>

namespace pgst {

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    const auto bad = text.find_first_not_of("0123456789+-./");
    if (bad != std::string::npos)
        throw std::invalid_argument("bad rational literal '" + text + "'");

    Rational value;
    const auto dot = text.find('.');
    if (dot != std::string::npos) {
        // Exact decimal conversion: digits * 10^-k.
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        const std::size_t frac_len = text.size() - dot - 1;
        if (digits.empty() || digits.find_first_of("./") != std::string::npos)
            throw std::invalid_argument("bad rational literal '" + text + "'");
        mpz_class num, den(1);
        if (mpz_set_str(num.get_mpz_t(), digits.c_str(), 10) != 0)
            throw std::invalid_argument("bad rational literal '" + text + "'");
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
        value = Rational(num, den);
    } else {
        if (mpq_set_str(value.get_mpq_t(), text.c_str(), 10) != 0)
            throw std::invalid_argument("bad rational literal '" + text + "'");
        if (mpz_sgn(mpq_denref(value.get_mpq_t())) == 0)
            throw std::invalid_argument("zero denominator in '" + text + "'");
    }
    value.canonicalize();
    return value;
}

Graph::Graph(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("graph order must be >= 1");
}

void Graph::add_edge(int i, int j, Rational weight) {
    if (i < 1 || i > n_ || j < 1 || j > n_)
        throw std::invalid_argument("edge endpoint outside 1..n");
    if (i == j) throw std::invalid_argument("self-loops are not allowed");
    if (has_edge(i, j)) throw std::invalid_argument("duplicate edge");
    if (sgn(weight) <= 0) throw std::invalid_argument("edge weight must be positive");
    Edge e;
    e.u = std::min(i, j);
    e.v = std::max(i, j);
    e.weight = std::move(weight);
    edges_.push_back(std::move(e));
}

bool Graph::has_edge(int i, int j) const noexcept {
    const int u = std::min(i, j), v = std::max(i, j);
    return std::any_of(edges_.begin(), edges_.end(),
                       [&](const Edge& e) { return e.u == u && e.v == v; });
}

Rational Graph::degree(int v) const {
    if (v < 1 || v > n_) throw std::invalid_argument("vertex outside 1..n");
    Rational deg(0);
    for (const Edge& e : edges_)
        if (e.u == v || e.v == v) deg += e.weight;
    return deg;
}

Rational Graph::total_edge_weight() const {
    Rational total(0);
    for (const Edge& e : edges_) total += e.weight;
    return total;
}

Graph build_path(int n) {
    Graph g(n);
    for (int i = 1; i < n; ++i) g.add_edge(i, i + 1);
    return g;
}

SymMatrix::SymMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, Rational(0)) {
    if (n < 1) throw std::invalid_argument("matrix order must be >= 1");
}

const Rational& SymMatrix::operator()(int i, int j) const {
    if (i < 1 || i > n_ || j < 1 || j > n_)
        throw std::out_of_range("matrix index outside 1..n");
    return a_[static_cast<std::size_t>(i - 1) * n_ + (j - 1)];
}

void SymMatrix::set(int i, int j, Rational value) {
    if (i < 1 || i > n_ || j < 1 || j > n_)
        throw std::out_of_range("matrix index outside 1..n");
    a_[static_cast<std::size_t>(i - 1) * n_ + (j - 1)] = value;
    a_[static_cast<std::size_t>(j - 1) * n_ + (i - 1)] = std::move(value);
}

void SymMatrix::add(int i, int j, const Rational& delta) {
    set(i, j, (*this)(i, j) + delta);
}

SymMatrix adjacency_matrix(const Graph& g) {
    SymMatrix a(g.order());
    for (const Edge& e : g.edges()) a.set(e.u, e.v, e.weight);
    return a;
}

SymMatrix laplacian_matrix(const Graph& g) {
    SymMatrix l(g.order());
    for (const Edge& e : g.edges()) {
        l.set(e.u, e.v, -e.weight);
        l.add(e.u, e.u, e.weight);
        l.add(e.v, e.v, e.weight);
    }
    return l;
}

SymMatrix single_excitation_hamiltonian(const Graph& g, HamiltonianKind kind) {
    const int n = g.order();
    SymMatrix h(n);
    if (kind == HamiltonianKind::XY) {
        for (const Edge& e : g.edges()) h.set(e.u, e.v, 2 * e.weight);
        return h;
    }
    const SymMatrix l = laplacian_matrix(g);
    const Rational shift = g.total_edge_weight();
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            Rational v = -2 * l(i, j);
            if (i == j) v += shift;
            h.set(i, j, std::move(v));
        }
    return h;
}

GraphParseError::GraphParseError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                  : message),
      line_(line) {}

namespace {

// Strips '#' comments and returns whitespace tokens.
std::vector<std::string> tokenize(std::string line) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
    return tokens;
}

int parse_int(const std::string& tok, int line, const char* what) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw GraphParseError(line, std::string("bad ") + what + " '" + tok + "'");
    }
}

}  // namespace

Graph parse_graph(std::istream& in) {
    std::string line;
    int line_no = 0;
    int n = -1;
    std::optional<Graph> g;
    while (std::getline(in, line)) {
        ++line_no;
        const auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        if (n < 0) {
            if (tokens.size() != 1)
                throw GraphParseError(line_no, "expected a single vertex count");
            n = parse_int(tokens[0], line_no, "vertex count");
            if (n < 1) throw GraphParseError(line_no, "vertex count must be >= 1");
            g.emplace(n);
            continue;
        }
        if (tokens.size() != 2 && tokens.size() != 3)
            throw GraphParseError(line_no, "expected 'i j [weight]'");
        const int i = parse_int(tokens[0], line_no, "endpoint");
        const int j = parse_int(tokens[1], line_no, "endpoint");
        Rational w(1);
        if (tokens.size() == 3) {
            try {
                w = parse_rational(tokens[2]);
            } catch (const std::exception& e) {
                throw GraphParseError(line_no, e.what());
            }
        }
        try {
            g->add_edge(i, j, std::move(w));
        } catch (const std::exception& e) {
            throw GraphParseError(line_no, e.what());
        }
    }
    if (!g) throw GraphParseError(line_no, "missing vertex count");
    return *std::move(g);
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GraphParseError(0, "cannot read graph file '" + path + "'");
    return parse_graph(in);
}

}  // namespace pgst

#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace pgst {

using Rational = mpq_class;

/// Parses a positive rational coupling from "3", "3/2" or "1.5" style text.
/// Decimal inputs are converted exactly (1.5 -> 3/2).
Rational parse_rational(const std::string& text);

/// Undirected weighted edge. Endpoints are 1-based labels, stored with u < v.
struct Edge {
    int u = 0;
    int v = 0;
    Rational weight = Rational(1);
};

/// Finite simple graph on vertices 1..n with positive rational couplings.
/// Weights stay exact here; floating point enters only once a matrix reaches
/// the spectral engine.
class Graph {
  public:
    explicit Graph(int n);

    int order() const noexcept { return n_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    /// Adds edge {i, j}. Rejects self-loops, repeated edges, endpoints
    /// outside 1..n, and non-positive weights.
    void add_edge(int i, int j, Rational weight = Rational(1));

    bool has_edge(int i, int j) const noexcept;

    /// Weighted degree of vertex v (sum of incident couplings).
    Rational degree(int v) const;

    /// |E|: edge count for unit weights, weight sum in general.
    Rational total_edge_weight() const;

  private:
    int n_ = 0;
    std::vector<Edge> edges_;
};

/// Chain 1-2-...-n with unit couplings. n = 1 gives the edgeless singleton.
Graph build_path(int n);

/// Symmetric matrix with exact rational entries. Indices are 1-based so rows
/// and columns line up with vertex labels.
class SymMatrix {
  public:
    SymMatrix() = default;
    explicit SymMatrix(int n);

    int order() const noexcept { return n_; }
    const Rational& operator()(int i, int j) const;

    /// Writes entry (i, j) and its mirror (j, i).
    void set(int i, int j, Rational value);
    void add(int i, int j, const Rational& delta);

  private:
    int n_ = 0;
    std::vector<Rational> a_;
};

enum class HamiltonianKind { XY, XYZ };

SymMatrix adjacency_matrix(const Graph& g);
SymMatrix laplacian_matrix(const Graph& g);

/// Single-excitation Hamiltonian: 2A(G) for XY, |E| I - 2 L(G) for XYZ.
SymMatrix single_excitation_hamiltonian(const Graph& g, HamiltonianKind kind);

/// Raised on malformed graph text; `line` is the 1-based input line (0 when
/// the file itself could not be read).
class GraphParseError : public std::runtime_error {
  public:
    GraphParseError(int line, const std::string& message);
    int line() const noexcept { return line_; }

  private:
    int line_ = 0;
};

/// Graph text format: first data line is `n`, then one edge per line
/// "i j [weight]". `#` starts a comment; blank lines are ignored.
Graph parse_graph(std::istream& in);
Graph load_graph(const std::string& path);

}  // namespace pgst

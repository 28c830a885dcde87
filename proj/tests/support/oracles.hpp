// Test-only oracles, kept independent of the library paths they check.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "pgst/graph.hpp"

namespace oracles {

// Every randomized corpus in this test suite draws from this seed.
inline constexpr unsigned kSeed = 20240917u;

// Closed-form eigenvector of the n-path Laplacian for eigenvalue
// 2 - 2 cos(pi r / n): entry j is cos((2j - 1) pi r / (2n)). Unnormalized.
inline Eigen::VectorXd path_laplacian_eigenvector(int n, int r) {
    Eigen::VectorXd v(n);
    for (int j = 1; j <= n; ++j)
        v(j - 1) = std::cos((2.0 * j - 1.0) * std::numbers::pi * r / (2.0 * n));
    if (r == 0) v.setOnes();
    return v;
}

inline double path_laplacian_eigenvalue(int n, int r) {
    return 2.0 - 2.0 * std::cos(std::numbers::pi * r / n);
}

// Projector onto the eigenvector of index r, built from the closed form.
inline Eigen::MatrixXd path_laplacian_projector(int n, int r) {
    Eigen::VectorXd v = path_laplacian_eigenvector(n, r);
    v.normalize();
    return v * v.transpose();
}

// Brute-force eigenvalue support of vertex a (1-based) from the closed-form
// projectors.
inline std::vector<int> path_support(int n, int a, double tol = 1e-9) {
    std::vector<int> support;
    for (int r = 0; r < n; ++r)
        if ((path_laplacian_projector(n, r).col(a - 1)).norm() > tol)
            support.push_back(r);
    return support;
}

// Dense matrix exponential of i t M by scaling-and-squaring with a Taylor
// series; independent of any spectral decomposition.
inline Eigen::MatrixXcd expm_it(const Eigen::MatrixXd& m, double t) {
    using Mat = Eigen::MatrixXcd;
    const int n = static_cast<int>(m.rows());
    Mat a = std::complex<double>(0.0, t) * m.cast<std::complex<double>>();
    int squarings = 0;
    double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    while (norm > 0.25) {
        a *= 0.5;
        norm *= 0.5;
        ++squarings;
    }
    Mat result = Mat::Identity(n, n);
    Mat term = Mat::Identity(n, n);
    for (int k = 1; k <= 40; ++k) {
        term = (term * a) / static_cast<double>(k);
        result += term;
        if (term.cwiseAbs().maxCoeff() < 1e-20) break;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

inline Eigen::MatrixXd to_dense(const pgst::SymMatrix& m) {
    Eigen::MatrixXd a(m.order(), m.order());
    for (int i = 1; i <= m.order(); ++i)
        for (int j = 1; j <= m.order(); ++j) a(i - 1, j - 1) = m(i, j).get_d();
    return a;
}

// Random tree on n vertices from a random Pruefer sequence.
inline pgst::Graph random_tree(int n, std::mt19937& rng) {
    pgst::Graph g(n);
    if (n == 1) return g;
    if (n == 2) {
        g.add_edge(1, 2);
        return g;
    }
    std::uniform_int_distribution<int> pick(1, n);
    std::vector<int> pruefer(n - 2);
    for (int& x : pruefer) x = pick(rng);
    std::vector<int> degree(n + 1, 1);
    for (int x : pruefer) ++degree[x];
    std::vector<bool> used(n + 1, false);
    for (int x : pruefer) {
        int leaf = 0;
        for (int v = 1; v <= n; ++v)
            if (degree[v] == 1 && !used[v]) {
                leaf = v;
                break;
            }
        g.add_edge(leaf, x);
        used[leaf] = true;
        --degree[x];
    }
    int u = 0, v = 0;
    for (int w = 1; w <= n; ++w)
        if (degree[w] == 1 && !used[w]) (u == 0 ? u : v) = w;
    g.add_edge(u, v);
    return g;
}

// Random connected graph: a tree plus a few extra edges.
inline pgst::Graph random_connected_graph(int n, std::mt19937& rng) {
    pgst::Graph g = random_tree(n, rng);
    std::uniform_int_distribution<int> pick(1, n);
    std::bernoulli_distribution extra(0.3);
    for (int tries = 0; tries < n; ++tries) {
        const int a = pick(rng), b = pick(rng);
        if (a != b && !g.has_edge(a, b) && extra(rng)) g.add_edge(a, b);
    }
    return g;
}

// Weighted chain with mirror-symmetric couplings w_i = w_{n-i}.
inline pgst::Graph mirror_symmetric_chain(int n, std::mt19937& rng) {
    pgst::Graph g(n);
    std::uniform_int_distribution<int> num(1, 9);
    std::uniform_int_distribution<int> den(1, 4);
    std::vector<pgst::Rational> w(n);  // w[i] couples i and i+1
    for (int i = 1; i <= n - 1 && 2 * i <= n; ++i)
        w[i] = pgst::Rational(num(rng), den(rng));
    for (int i = 1; i <= n - 1; ++i) {
        const int mirror = n - i;
        const pgst::Rational weight = i <= mirror ? w[i] : w[mirror];
        g.add_edge(i, i + 1, weight);
    }
    return g;
}

}  // namespace oracles

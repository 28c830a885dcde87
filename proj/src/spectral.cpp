#include "pgst/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace pgst {

namespace {

Eigen::MatrixXd to_dense(const SymMatrix& m) {
    const int n = m.order();
    Eigen::MatrixXd a(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            const double v = m(i, j).get_d();
            if (!std::isfinite(v))
                throw std::invalid_argument("matrix entry does not fit a double");
            a(i - 1, j - 1) = v;
        }
    return a;
}

}  // namespace

Eigen::VectorXd SpectralDecomposition::projected_vertex(int r, int a) const {
    if (a < 1 || a > n_) throw std::out_of_range("vertex outside 1..n");
    return proj_.at(r).col(a - 1);
}

double SpectralDecomposition::projector_entry(int r, int a, int b) const {
    if (a < 1 || a > n_ || b < 1 || b > n_)
        throw std::out_of_range("vertex outside 1..n");
    return proj_.at(r)(a - 1, b - 1);
}

SpectralDecomposition decompose(const SymMatrix& m, double group_tol) {
    const Eigen::MatrixXd a = to_dense(m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("symmetric eigensolver did not converge");

    const Eigen::VectorXd& raw = solver.eigenvalues();  // ascending
    const Eigen::MatrixXd& vecs = solver.eigenvectors();
    const int n = m.order();

    SpectralDecomposition d;
    d.n_ = n;
    const double spread = raw(n - 1) - raw(0);
    d.group_tol_ = group_tol > 0 ? group_tol : 1e-8 * std::max(1.0, spread);

    int begin = 0;
    for (int i = 1; i <= n; ++i) {
        if (i < n && raw(i) - raw(i - 1) <= d.group_tol_) continue;
        const int size = i - begin;
        const Eigen::MatrixXd block = vecs.middleCols(begin, size);
        Eigen::MatrixXd proj = block * block.transpose();
        proj = 0.5 * (proj + proj.transpose().eval());  // exact symmetry
        d.theta_.push_back(raw.segment(begin, size).mean());
        d.proj_.push_back(std::move(proj));
        begin = i;
    }

    for (std::size_t r = 1; r < d.theta_.size(); ++r)
        if (d.theta_[r] - d.theta_[r - 1] < 10.0 * d.group_tol_)
            d.grouping_warning_ = true;
    return d;
}

std::vector<int> eigenvalue_support(const SpectralDecomposition& d, int a, double tol) {
    std::vector<int> support;
    for (int r = 0; r < d.count(); ++r)
        if (d.projected_vertex(r, a).norm() > tol) support.push_back(r);
    return support;
}

bool is_cospectral(const SpectralDecomposition& d, int a, int b, double tol) {
    for (int r = 0; r < d.count(); ++r)
        if (std::abs(d.projector_entry(r, a, a) - d.projector_entry(r, b, b)) > tol)
            return false;
    return true;
}

std::optional<SignPattern> strong_cospectrality(const SpectralDecomposition& d,
                                                int a, int b, double tol) {
    const auto support_a = eigenvalue_support(d, a, tol);
    if (support_a != eigenvalue_support(d, b, tol)) return std::nullopt;

    SignPattern pattern;
    pattern.support = support_a;
    for (int r : support_a) {
        const Eigen::VectorXd va = d.projected_vertex(r, a);
        const Eigen::VectorXd vb = d.projected_vertex(r, b);
        if ((va - vb).norm() <= tol)
            pattern.sigma.push_back(0);
        else if ((va + vb).norm() <= tol)
            pattern.sigma.push_back(1);
        else
            return std::nullopt;
    }
    return pattern;
}

}  // namespace pgst

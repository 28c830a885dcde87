#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "pgst/graph.hpp"

namespace pgst {

inline constexpr double kDefaultCospectralTol = 1e-7;

/// Spectral decomposition M = sum_r theta_r E_r of a real symmetric matrix,
/// with distinct eigenvalues in ascending order and one orthogonal projector
/// per eigenvalue. Eigenvalues closer than the grouping tolerance are merged
/// into a single projector, so degenerate spectra are handled per projector.
class SpectralDecomposition {
  public:
    int order() const noexcept { return n_; }

    /// Number of distinct eigenvalues d + 1.
    int count() const noexcept { return static_cast<int>(theta_.size()); }

    double eigenvalue(int r) const { return theta_.at(r); }
    const std::vector<double>& eigenvalues() const noexcept { return theta_; }
    const Eigen::MatrixXd& projector(int r) const { return proj_.at(r); }

    double group_tol() const noexcept { return group_tol_; }

    /// True when two merged clusters ended up closer than 10x the grouping
    /// tolerance, i.e. the split between them is not well conditioned.
    bool grouping_warning() const noexcept { return grouping_warning_; }

    double spectral_spread() const { return theta_.back() - theta_.front(); }

    /// E_r e_a for 1-based vertex a.
    Eigen::VectorXd projected_vertex(int r, int a) const;

    /// (E_r)_{a,b} for 1-based vertices.
    double projector_entry(int r, int a, int b) const;

  private:
    friend SpectralDecomposition decompose(const SymMatrix&, double);

    int n_ = 0;
    double group_tol_ = 0;
    bool grouping_warning_ = false;
    std::vector<double> theta_;
    std::vector<Eigen::MatrixXd> proj_;
};

/// Diagonalizes M and groups eigenvalues within group_tol of each other.
/// group_tol <= 0 selects the default 1e-8 * max(1, spectral range).
/// Throws on eigensolver non-convergence.
SpectralDecomposition decompose(const SymMatrix& m, double group_tol = -1.0);

/// Sign data of a strongly cospectral pair: sigma_r = 0 when E_r e_a equals
/// E_r e_b, 1 when the projections have opposite signs. One bit per
/// eigenvalue index in the (ascending) common support.
struct SignPattern {
    std::vector<int> support;
    std::vector<int> sigma;
};

/// Indices r with ||E_r e_a|| > tol.
std::vector<int> eigenvalue_support(const SpectralDecomposition& d, int a,
                                    double tol = kDefaultCospectralTol);

/// (E_r)_{a,a} == (E_r)_{b,b} for all r, within tol.
bool is_cospectral(const SpectralDecomposition& d, int a, int b,
                   double tol = kDefaultCospectralTol);

/// E_r e_a = +/- E_r e_b for every eigenvalue index. Returns the sign
/// pattern over the common support, or nullopt when the supports differ or
/// some projection is neither aligned nor anti-aligned.
std::optional<SignPattern> strong_cospectrality(const SpectralDecomposition& d,
                                                int a, int b,
                                                double tol = kDefaultCospectralTol);

}  // namespace pgst

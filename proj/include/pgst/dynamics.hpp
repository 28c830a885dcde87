#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "pgst/spectral.hpp"

namespace pgst {

/// U(t)_{a,b} = sum_r e^{i theta_r t} (E_r)_{a,b}.
std::complex<double> evolve_amplitude(const SpectralDecomposition& d, int a, int b,
                                      double t);

/// Closed-form end-to-end transfer probability of the 3-chain Laplacian:
/// (1/9) (1 - cos t)^2 (5 + 4 cos t). Independent oracle for the dynamics;
/// bounded by 3/4.
double n3_probability(double t);

/// Sampled transfer data between a fixed vertex pair.
struct FidelityTrace {
    int a = 0;
    int b = 0;
    std::vector<double> times;
    std::vector<std::complex<double>> amplitudes;
    std::vector<double> probabilities;  // |amplitude|^2
};

/// Uniform sampling of U(t)_{a,b} on [t_start, t_end], endpoints included.
FidelityTrace fidelity_trace(const SpectralDecomposition& d, int a, int b,
                             double t_start, double t_end, int steps);

struct TransferPeak {
    double time = 0;
    double fidelity = 0;  // |U(time)_{a,b}|
    double phase = 0;     // arg U(time)_{a,b}, wrapped to (-pi, pi]
    double horizon = 0;   // horizon that was searched
    bool target_met = false;
    bool budget_exhausted = false;
};

struct PeakOptions {
    /// Coarse scan density: samples per fastest oscillation period, i.e.
    /// step = 2 pi / (samples_per_period * spectral spread).
    double samples_per_period = 8.0;
    /// Cap on amplitude evaluations; exceeding it returns the best found so
    /// far with budget_exhausted set.
    long long budget = 10'000'000;
    /// false: return the first refined peak meeting the target (PGST is an
    /// existence statement). true: best peak over the whole horizon.
    bool global_search = false;
};

/// Coarse uniform scan of |U(t)_{a,b}| followed by golden-section refinement
/// around promising local maxima. target_fidelity must lie in (0, 1).
TransferPeak find_peak(const SpectralDecomposition& d, int a, int b,
                       double target_fidelity, double horizon,
                       const PeakOptions& options = {});

/// Numeric search for |U(tau)_{a,b}| >= 1 - tol. A hit is a numerical PST
/// candidate, never a proof. horizon <= 0 selects default_peak_horizon.
std::optional<double> detect_pst(const SpectralDecomposition& d, int a, int b,
                                 double tol = 1e-9, double horizon = -1.0);

/// arg U(tau)_{a,b} at the peak, wrapped to (-pi, pi]. For Laplacian PGST
/// pairs this tends to 0 as the fidelity approaches 1.
double phase_at_peak(const SpectralDecomposition& d, int a, int b,
                     const TransferPeak& peak);

/// 10^3 * 2 pi / (smallest gap between distinct eigenvalues), capped at
/// 10^6 time units.
double default_peak_horizon(const SpectralDecomposition& d);

}  // namespace pgst

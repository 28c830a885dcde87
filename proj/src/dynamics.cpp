#include "pgst/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pgst {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_phase(double phase) {
    phase = std::remainder(phase, 2.0 * kPi);
    if (phase <= -kPi) phase += 2.0 * kPi;
    return phase;
}

// Amplitude evaluator with the pair's projector entries pulled out once.
struct PairAmplitude {
    std::vector<double> theta;
    std::vector<double> coeff;  // (E_r)_{a,b}

    PairAmplitude(const SpectralDecomposition& d, int a, int b) {
        theta.reserve(d.count());
        coeff.reserve(d.count());
        for (int r = 0; r < d.count(); ++r) {
            theta.push_back(d.eigenvalue(r));
            coeff.push_back(d.projector_entry(r, a, b));
        }
    }

    std::complex<double> operator()(double t) const {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t r = 0; r < theta.size(); ++r)
            if (coeff[r] != 0.0) acc += coeff[r] * std::polar(1.0, theta[r] * t);
        return acc;
    }
};

// Golden-section maximization of |amp| on [lo, hi].
struct Refined {
    double t;
    double value;
};

Refined golden_max(const PairAmplitude& amp, double lo, double hi,
                   long long& evals_left) {
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = std::abs(amp(x1));
    double f2 = std::abs(amp(x2));
    evals_left -= 2;
    while (hi - lo > 1e-12 * std::max(1.0, std::abs(hi)) && evals_left > 0) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = std::abs(amp(x2));
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = std::abs(amp(x1));
        }
        --evals_left;
    }
    return f1 > f2 ? Refined{x1, f1} : Refined{x2, f2};
}

}  // namespace

std::complex<double> evolve_amplitude(const SpectralDecomposition& d, int a, int b,
                                      double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("time must be finite");
    std::complex<double> acc(0.0, 0.0);
    for (int r = 0; r < d.count(); ++r)
        acc += d.projector_entry(r, a, b) * std::polar(1.0, d.eigenvalue(r) * t);
    return acc;
}

double n3_probability(double t) {
    const double c = std::cos(t);
    return (1.0 - c) * (1.0 - c) * (5.0 + 4.0 * c) / 9.0;
}

FidelityTrace fidelity_trace(const SpectralDecomposition& d, int a, int b,
                             double t_start, double t_end, int steps) {
    if (!(t_start < t_end)) throw std::invalid_argument("need t_start < t_end");
    if (steps < 2) throw std::invalid_argument("need at least 2 samples");

    const PairAmplitude amp(d, a, b);
    FidelityTrace trace;
    trace.a = a;
    trace.b = b;
    trace.times.reserve(steps);
    trace.amplitudes.reserve(steps);
    trace.probabilities.reserve(steps);
    for (int i = 0; i < steps; ++i) {
        const double t =
            i + 1 == steps
                ? t_end
                : t_start + (t_end - t_start) * static_cast<double>(i) / (steps - 1);
        const std::complex<double> u = amp(t);
        const double p = std::norm(u);
        if (p > 1.0 + 1e-9) throw std::logic_error("transfer probability above 1");
        trace.times.push_back(t);
        trace.amplitudes.push_back(u);
        trace.probabilities.push_back(p);
    }
    return trace;
}

TransferPeak find_peak(const SpectralDecomposition& d, int a, int b,
                       double target_fidelity, double horizon,
                       const PeakOptions& options) {
    if (!(target_fidelity > 0.0 && target_fidelity < 1.0))
        throw std::invalid_argument("target fidelity must lie in (0, 1)");
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw std::invalid_argument("horizon must be positive and finite");
    if (options.samples_per_period < 8.0)
        throw std::invalid_argument("need at least 8 samples per period");

    const PairAmplitude amp(d, a, b);
    long long evals_left = options.budget;

    TransferPeak best;
    best.horizon = horizon;
    const auto consider = [&](double t, double value) {
        if (value > best.fidelity) {
            best.time = t;
            best.fidelity = value;
            best.phase = wrap_phase(std::arg(amp(t)));
        }
    };

    const double spread = d.spectral_spread();
    if (spread < 1e-12) {
        // |U(t)_{a,b}| is constant in t.
        const double value = std::abs(amp(0.0));
        consider(0.0, value);
        best.target_met = best.fidelity >= target_fidelity;
        return best;
    }

    const double dt = 2.0 * kPi / (options.samples_per_period * spread);
    const long long steps = static_cast<long long>(std::ceil(horizon / dt));

    // A coarse sample sitting next to a true peak undershoots it by at most
    // ~(pi/K)^2/8 of fidelity, so refining everything within 0.1 of the
    // running best never drops a competitive peak at K >= 8.
    constexpr double kRefineMargin = 0.1;

    // Phasor recurrence for the scan, refreshed periodically; refinement and
    // reported values always re-evaluate exactly.
    std::vector<std::complex<double>> phasor(amp.theta.size());
    std::vector<std::complex<double>> rotate(amp.theta.size());
    for (std::size_t r = 0; r < amp.theta.size(); ++r)
        rotate[r] = std::polar(1.0, amp.theta[r] * dt);

    double f_prev2 = 0.0, f_prev1 = 0.0;
    double t_prev2 = 0.0, t_prev1 = 0.0;
    for (long long i = 0; i <= steps; ++i) {
        const double t = std::min(static_cast<double>(i) * dt, horizon);
        if (i % 8192 == 0) {
            for (std::size_t r = 0; r < amp.theta.size(); ++r)
                phasor[r] = std::polar(1.0, amp.theta[r] * t);
        }
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t r = 0; r < amp.theta.size(); ++r)
            acc += amp.coeff[r] * phasor[r];
        const double f = std::abs(acc);
        --evals_left;

        const bool local_max =
            (i >= 2 && f_prev1 >= f_prev2 && f_prev1 >= f) ||
            (i == 1 && f_prev1 >= f);  // peak at the left boundary (a == b)
        if (local_max && f_prev1 >= best.fidelity - kRefineMargin) {
            const double lo = i >= 2 ? t_prev2 : 0.0;
            const double hi = std::min(t, horizon);
            const Refined peak = golden_max(amp, lo, hi, evals_left);
            consider(peak.t, peak.value);
            if (!options.global_search && best.fidelity >= target_fidelity) {
                best.target_met = true;
                return best;
            }
        }
        if (evals_left <= 0) {
            best.target_met = best.fidelity >= target_fidelity;
            best.budget_exhausted = true;
            return best;
        }

        f_prev2 = f_prev1;
        t_prev2 = t_prev1;
        f_prev1 = f;
        t_prev1 = t;
        for (std::size_t r = 0; r < amp.theta.size(); ++r) phasor[r] *= rotate[r];
    }

    // Right boundary may hold the best unrefined sample.
    if (f_prev1 >= f_prev2 && f_prev1 >= best.fidelity - kRefineMargin) {
        const Refined peak = golden_max(amp, t_prev2, horizon, evals_left);
        consider(peak.t, peak.value);
    }

    best.target_met = best.fidelity >= target_fidelity;
    return best;
}

std::optional<double> detect_pst(const SpectralDecomposition& d, int a, int b,
                                 double tol, double horizon) {
    if (!(tol > 0.0 && tol < 0.5)) throw std::invalid_argument("tol must be in (0, 0.5)");
    if (horizon <= 0.0) horizon = default_peak_horizon(d);
    const TransferPeak peak = find_peak(d, a, b, 1.0 - tol, horizon);
    if (peak.target_met) return peak.time;
    return std::nullopt;
}

double phase_at_peak(const SpectralDecomposition& d, int a, int b,
                     const TransferPeak& peak) {
    return wrap_phase(std::arg(evolve_amplitude(d, a, b, peak.time)));
}

double default_peak_horizon(const SpectralDecomposition& d) {
    double min_gap = 0.0;
    for (int r = 1; r < d.count(); ++r) {
        const double gap = d.eigenvalue(r) - d.eigenvalue(r - 1);
        if (min_gap == 0.0 || gap < min_gap) min_gap = gap;
    }
    if (min_gap == 0.0) return 1e3;  // single eigenvalue: |U| is constant
    return std::min(1e3 * 2.0 * kPi / min_gap, 1e6);
}

}  // namespace pgst

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "pgst/dynamics.hpp"
#include "pgst/graph.hpp"
#include "pgst/spectral.hpp"
#include "support/oracles.hpp"

using namespace pgst;

namespace {

constexpr double kPi = std::numbers::pi;

SpectralDecomposition path_laplacian(int n) {
    return decompose(laplacian_matrix(build_path(n)));
}

}  // namespace

TEST_CASE("evolve_amplitude basics") {
    SUBCASE("U(0) = I") {
        const auto d = path_laplacian(5);
        for (int a = 1; a <= 5; ++a) {
            CHECK(std::abs(evolve_amplitude(d, a, a, 0.0) - 1.0) <= 1e-12);
            for (int b = 1; b <= 5; ++b)
                if (b != a) CHECK(std::abs(evolve_amplitude(d, a, b, 0.0)) <= 1e-12);
        }
    }
    SUBCASE("perfect transfer on L(P_2) at pi/2") {
        const auto d = path_laplacian(2);
        const auto u = evolve_amplitude(d, 1, 2, kPi / 2.0);
        CHECK(std::abs(std::abs(u) - 1.0) <= 1e-12);
        CHECK(std::abs(u - std::complex<double>(1.0, 0.0)) <= 1e-12);  // 1/2 - e^{i pi}/2
    }
    SUBCASE("rejects non-finite time") {
        const auto d = path_laplacian(2);
        CHECK_THROWS_AS(evolve_amplitude(d, 1, 2, std::nan("")), std::invalid_argument);
    }
}

TEST_CASE("n=3 closed-form oracle") {
    SUBCASE("formula values") {
        CHECK(n3_probability(0.0) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(n3_probability(kPi) == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
        double max_p = 0.0;
        for (int i = 0; i <= 200000; ++i) max_p = std::max(max_p, n3_probability(i * 1e-4));
        CHECK(max_p <= 0.75 + 1e-9);
        CHECK(max_p >= 0.75 - 1e-6);
    }
    SUBCASE("matches the evolved probability pointwise") {
        const auto d = path_laplacian(3);
        for (int i = 0; i < 1000; ++i) {
            const double t = 20.0 * kPi * i / 999.0;
            const double p = std::norm(evolve_amplitude(d, 1, 3, t));
            CHECK(std::abs(p - n3_probability(t)) <= 1e-10);
        }
    }
}

TEST_CASE("fidelity_trace") {
    SUBCASE("L(P_2) on [0, pi] with 3 samples peaks at pi/2") {
        const auto tr = fidelity_trace(path_laplacian(2), 1, 2, 0.0, kPi, 3);
        REQUIRE(tr.times.size() == 3);
        CHECK(tr.times[1] == doctest::Approx(kPi / 2.0));
        CHECK(tr.probabilities[0] <= 1e-12);
        CHECK(std::abs(tr.probabilities[1] - 1.0) <= 1e-12);
        CHECK(tr.times.size() == tr.amplitudes.size());
        CHECK(tr.times.size() == tr.probabilities.size());
    }
    SUBCASE("L(P_3) stays below the 3/4 bound") {
        const auto tr = fidelity_trace(path_laplacian(3), 1, 3, 0.0, 2.0 * kPi, 201);
        double max_p = 0.0;
        for (double p : tr.probabilities) max_p = std::max(max_p, p);
        CHECK(max_p <= 0.75 + 1e-9);
    }
    SUBCASE("probabilities stay in [0, 1] on random graphs") {
        std::mt19937 rng(oracles::kSeed + 20);
        for (int trial = 0; trial < 10; ++trial) {
            const int n = 2 + static_cast<int>(rng() % 6);
            const Graph g = oracles::random_connected_graph(n, rng);
            const auto tr = fidelity_trace(decompose(laplacian_matrix(g)), 1, n, 0.0, 40.0, 500);
            for (double p : tr.probabilities) {
                CHECK(p >= 0.0);
                CHECK(p <= 1.0 + 1e-9);
            }
        }
    }
    SUBCASE("argument validation") {
        const auto d = path_laplacian(2);
        CHECK_THROWS_AS(fidelity_trace(d, 1, 2, 1.0, 0.0, 10), std::invalid_argument);
        CHECK_THROWS_AS(fidelity_trace(d, 1, 2, 0.0, 1.0, 1), std::invalid_argument);
    }
}

TEST_CASE("unitarity and symmetry of the evolution") {
    std::mt19937 rng(oracles::kSeed + 21);
    std::uniform_real_distribution<double> time(0.0, 50.0);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 6);
        const Graph g = oracles::random_connected_graph(n, rng);
        const auto d = decompose(laplacian_matrix(g));
        for (int s = 0; s < 5; ++s) {
            const double t = time(rng);
            for (int a = 1; a <= n; ++a) {
                double row_norm = 0.0;
                for (int b = 1; b <= n; ++b) {
                    const auto u = evolve_amplitude(d, a, b, t);
                    row_norm += std::norm(u);
                    CHECK(std::abs(u - evolve_amplitude(d, b, a, t)) <= 1e-12);
                }
                CHECK(std::abs(row_norm - 1.0) <= 1e-9);
            }
        }
    }
}

TEST_CASE("matrix-exponential oracle agrees with the projector evolution") {
    std::mt19937 rng(oracles::kSeed + 22);
    std::uniform_real_distribution<double> time(0.0, 100.0);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const Graph g = oracles::random_connected_graph(n, rng);
        const SymMatrix l = laplacian_matrix(g);
        const auto d = decompose(l);
        const Eigen::MatrixXd dense = oracles::to_dense(l);
        for (int s = 0; s < 4; ++s) {
            const double t = time(rng);
            const Eigen::MatrixXcd u = oracles::expm_it(dense, t);
            for (int a = 1; a <= n; ++a)
                for (int b = 1; b <= n; ++b)
                    CHECK(std::abs(evolve_amplitude(d, a, b, t) - u(a - 1, b - 1)) <= 1e-9);
        }
    }
}

TEST_CASE("find_peak") {
    SUBCASE("L(P_2): target 0.999 found at tau = pi/2 with unit fidelity") {
        const auto d = path_laplacian(2);
        const auto peak = find_peak(d, 1, 2, 0.999, 100.0);
        REQUIRE(peak.target_met);
        CHECK(std::abs(peak.time - kPi / 2.0) <= 1e-6);
        CHECK(peak.fidelity >= 1.0 - 1e-9);
        CHECK(peak.fidelity <= 1.0 + 1e-9);
    }
    SUBCASE("L(P_3): target 0.9 is never reached, best is the sqrt(3)/2 cap") {
        const auto d = path_laplacian(3);
        const auto peak = find_peak(d, 1, 3, 0.9, default_peak_horizon(d));
        CHECK_FALSE(peak.target_met);
        CHECK(peak.fidelity <= std::sqrt(0.75) + 1e-6);
    }
    SUBCASE("L(P_4): target 0.99 found; regression anchor") {
        const auto d = path_laplacian(4);
        const auto peak = find_peak(d, 1, 4, 0.99, default_peak_horizon(d));
        REQUIRE(peak.target_met);
        CHECK(peak.fidelity >= 0.99);
        // First qualifying peak of this search; frozen from its own run.
        CHECK(std::abs(peak.time - 15.628944) <= 1e-3);
    }
    SUBCASE("budget exhaustion returns best-so-far, flagged") {
        const auto d = path_laplacian(8);
        PeakOptions opts;
        opts.budget = 50;
        const auto peak = find_peak(d, 1, 8, 0.99, 1e5, opts);
        CHECK(peak.budget_exhausted);
    }
    SUBCASE("argument validation") {
        const auto d = path_laplacian(2);
        CHECK_THROWS_AS(find_peak(d, 1, 2, 1.0, 10.0), std::invalid_argument);
        CHECK_THROWS_AS(find_peak(d, 1, 2, 0.0, 10.0), std::invalid_argument);
        CHECK_THROWS_AS(find_peak(d, 1, 2, 0.5, -1.0), std::invalid_argument);
    }
    SUBCASE("same-vertex peak sits at t = 0") {
        const auto d = path_laplacian(3);
        const auto peak = find_peak(d, 1, 1, 0.5, 10.0);
        CHECK(peak.target_met);
        CHECK(peak.time <= 1e-6);
        CHECK(peak.fidelity >= 1.0 - 1e-9);
    }
}

TEST_CASE("detect_pst") {
    SUBCASE("L(P_2) has PST at pi/2") {
        const auto tau = detect_pst(path_laplacian(2), 1, 2, 1e-9, 100.0);
        REQUIRE(tau.has_value());
        CHECK(std::abs(*tau - kPi / 2.0) <= 1e-6);
    }
    SUBCASE("L(P_3) has none") {
        CHECK_FALSE(detect_pst(path_laplacian(3), 1, 3, 1e-9).has_value());
    }
    SUBCASE("L(P_4): pretty good but no PST within horizon 1e4") {
        CHECK_FALSE(detect_pst(path_laplacian(4), 1, 4, 1e-9, 1e4).has_value());
    }
}

TEST_CASE("phase at peaks") {
    SUBCASE("L(P_2): transfer phase is +1") {
        const auto d = path_laplacian(2);
        const auto peak = find_peak(d, 1, 2, 0.999, 100.0);
        CHECK(std::abs(phase_at_peak(d, 1, 2, peak)) <= 1e-6);
    }
    SUBCASE("L(P_4) and L(P_8): |phase| <= 0.3 at 0.99-fidelity peaks") {
        for (int n : {4, 8}) {
            const auto d = path_laplacian(n);
            const auto peak = find_peak(d, 1, n, 0.99, default_peak_horizon(d));
            REQUIRE(peak.target_met);
            CHECK(std::abs(phase_at_peak(d, 1, n, peak)) <= 0.3);
            CHECK(phase_at_peak(d, 1, n, peak) == doctest::Approx(peak.phase));
        }
    }
}

TEST_CASE("monotone certification across doubling horizons") {
    SUBCASE("power-of-two chains approach fidelity 1") {
        for (int n : {2, 4, 8}) {
            const auto d = path_laplacian(n);
            const double full = default_peak_horizon(d);
            PeakOptions opts;
            opts.global_search = true;
            double previous = 0.0;
            double best_final = 0.0;
            for (double h : {full / 8, full / 4, full / 2, full}) {
                const auto peak = find_peak(d, 1, n, 0.99, h, opts);
                CHECK(peak.fidelity >= previous - 1e-12);
                previous = peak.fidelity;
                best_final = peak.fidelity;
            }
            for (double eps : {0.1, 0.01}) CHECK(best_final > 1.0 - eps);
        }
    }
    SUBCASE("non-power-of-two chains plateau strictly below 1") {
        // Plateau regression anchors, frozen from this search at the default
        // horizon. n=3 is the paper bound sqrt(3)/2; the others are empirical.
        const struct {
            int n;
            double plateau;
            double tol;
        } anchors[] = {
            {3, 0.8660254037844386, 1e-9},  // sqrt(3)/2
            {5, 0.9510564713, 1e-5},
            {6, 0.7499999928, 1e-5},
            {7, 0.9747908290, 1e-5},
        };
        for (const auto& anchor : anchors) {
            const auto d = path_laplacian(anchor.n);
            PeakOptions opts;
            opts.global_search = true;
            const auto peak =
                find_peak(d, 1, anchor.n, 0.99, default_peak_horizon(d), opts);
            CHECK_FALSE(peak.target_met);
            CHECK(peak.fidelity < 0.999);
            CHECK(std::abs(peak.fidelity - anchor.plateau) <= anchor.tol);
        }
    }
}

TEST_CASE("default horizon follows the smallest spectral gap") {
    const auto d = path_laplacian(4);
    const double min_gap = 2.0 - std::sqrt(2.0);
    CHECK(default_peak_horizon(d) ==
          doctest::Approx(1e3 * 2.0 * kPi / min_gap).epsilon(1e-9));
    // Capped at 1e6 for nearly-degenerate spectra.
    SymMatrix tight(2);
    tight.set(1, 1, Rational(0));
    tight.set(2, 2, Rational(1, 100000000));
    CHECK(default_peak_horizon(decompose(tight, 1e-12)) == doctest::Approx(1e6));
}

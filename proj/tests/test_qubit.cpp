#include "nanoqed/qubit.hpp"

#include "nanoqed/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

using namespace nanoqed;

TEST_CASE("josephson energy closed form") {
    CHECK(josephson_energy(12.7e9, 0.0) == doctest::Approx(12.7e9));
    // cos(pi/2) in doubles leaves ~1e-16-relative residue
    CHECK(josephson_energy(12.7e9, 0.5) < 1e-5);
    CHECK(josephson_energy(12.7e9, 1.0 / 3.0) == doctest::Approx(6.35e9));

    // periodic with period 1, nonnegative, even
    for (double f : {-0.7, -0.2, 0.13, 0.41, 0.99}) {
        CHECK(josephson_energy(5e9, f) >= 0.0);
        CHECK(josephson_energy(5e9, f + 1.0) ==
              doctest::Approx(josephson_energy(5e9, f)).epsilon(1e-12));
        CHECK(josephson_energy(5e9, -f) ==
              doctest::Approx(josephson_energy(5e9, f)).epsilon(1e-12));
    }

    // asymmetric SQUID never fully closes
    CHECK(josephson_energy(10e9, 0.5, 0.1) == doctest::Approx(1e9));
}

TEST_CASE("cpb hamiltonian entries") {
    SUBCASE("charging term only") {
        const auto h = build_cpb_hamiltonian({1.0, 0.0, 0.0, 0.0}, {1});
        REQUIRE(h.dimension() == 3);
        CHECK(h.mat(0, 0).real() == doctest::Approx(4.0));
        CHECK(h.mat(1, 1).real() == doctest::Approx(0.0));
        CHECK(h.mat(2, 2).real() == doctest::Approx(4.0));
        CHECK(std::abs(h.mat(0, 1)) == doctest::Approx(0.0));
        CHECK(std::abs(h.mat(0, 2)) == doctest::Approx(0.0));
    }

    SUBCASE("hermiticity") {
        const auto h = build_cpb_hamiltonian({1.7e9, 9.3e9, 0.21, 0.37, 0.05}, {5});
        CHECK((h.mat - h.mat.adjoint()).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
    }

    SUBCASE("two-state block splitting is exactly E_J") {
        // At n_sigma = 0.5 the {n=0, n=1} block is degenerate in charging
        // energy, so its 2x2 eigensplitting equals the off-diagonal 2*|E_J/2|.
        const double ec = 3.1e9;
        const double ej0 = 4.2e9;
        const auto h = build_cpb_hamiltonian({ec, ej0, 0.0, 0.5, 0.0}, {1});
        // block indices: n=0 -> 1, n=1 -> 2
        Eigen::Matrix2cd block;
        block << h.mat(1, 1), h.mat(1, 2), h.mat(2, 1), h.mat(2, 2);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(block);
        CHECK(es.eigenvalues()(1) - es.eigenvalues()(0) == doctest::Approx(ej0));
    }

    SUBCASE("rejects non-finite input") {
        CpbParams bad{1e9, 1e9, 0.0, 0.0};
        bad.flux = std::numeric_limits<double>::quiet_NaN();
        CHECK_THROWS_AS(build_cpb_hamiltonian(bad, {3}), ConfigError);
    }
}

TEST_CASE("qubit spectrum") {
    SUBCASE("orthonormality and residual") {
        const CpbParams p{1.8e9, 11.7e9, 0.2, 0.5};
        const ChargeBasis b{7};
        const auto s = qubit_spectrum(p, b);
        const auto gram = s.eigenvectors.adjoint() * s.eigenvectors;
        CHECK((gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols()))
                  .cwiseAbs()
                  .maxCoeff() < 1e-10);

        const auto h = build_cpb_hamiltonian(p, b);
        const double hnorm = h.mat.norm();
        for (int k = 0; k < s.eigenvalues.size(); ++k) {
            const double res =
                (h.mat * s.eigenvectors.col(k) - s.eigenvalues(k) * s.eigenvectors.col(k))
                    .norm();
            CHECK(res <= 1e-9 * hnorm);
        }
        for (int k = 1; k < s.eigenvalues.size(); ++k)
            CHECK(s.eigenvalues(k) >= s.eigenvalues(k - 1));
    }

    SUBCASE("degeneracy-point transition vs high-truncation oracle") {
        const CpbParams p{1.8e9, 11.7e9, 0.0, 0.5};
        const auto s5 = qubit_spectrum(p, {5}, 2);
        const double de = s5.transition(1);
        // E_J/E_C = 6.5: charge-state mixing pulls the splitting ~13% below E_J
        CHECK(de > 0.8 * p.josephson_energy0);
        CHECK(de < 1.0 * p.josephson_energy0);

        const auto s10 = qubit_spectrum(p, {10}, 2); // brute-force oracle
        CHECK(de == doctest::Approx(s10.transition(1)).epsilon(1e-8));
    }

    SUBCASE("pure charging ladder") {
        const auto s = qubit_spectrum({2.2e9, 0.0, 0.0, 0.0}, {5}, 3);
        CHECK(s.transition(1) == doctest::Approx(4.0 * 2.2e9));
    }

    SUBCASE("charge periodicity to 1e-9 relative") {
        CpbParams p{1.3e9, 12.7e9, 0.17, 0.23};
        const auto a = qubit_spectrum(p, {7}, 5);
        p.n_sigma += 1.0;
        const auto b = qubit_spectrum(p, {7}, 5);
        for (int k = 0; k < 5; ++k)
            CHECK(a.eigenvalues(k) ==
                  doctest::Approx(b.eigenvalues(k)).epsilon(1e-9));
    }

    SUBCASE("phase fixing makes results deterministic") {
        const CpbParams p{1.8e9, 11.7e9, 0.3, 0.4};
        const auto a = qubit_spectrum(p, {7});
        const auto b = qubit_spectrum(p, {7});
        CHECK((a.eigenvectors - b.eigenvectors).cwiseAbs().maxCoeff() == 0.0);
        // largest component real positive
        for (int k = 0; k < a.eigenvectors.cols(); ++k) {
            Eigen::Index imax = 0;
            a.eigenvectors.col(k).cwiseAbs().maxCoeff(&imax);
            CHECK(a.eigenvectors(imax, k).imag() == doctest::Approx(0.0));
            CHECK(a.eigenvectors(imax, k).real() > 0.0);
        }
    }
}

TEST_CASE("transition energy curve") {
    const CpbParams p{1.8e9, 11.7e9, 0.0, 0.5};
    std::vector<double> grid;
    for (int i = 0; i <= 100; ++i)
        grid.push_back(-0.5 + 1.5 * i / 100.0);

    SUBCASE("minimum at half-integer flux") {
        const auto curve = transition_energy_curve(p, grid, 0.5);
        std::size_t imin = 0;
        for (std::size_t i = 1; i < curve.size(); ++i)
            if (curve[i] < curve[imin])
                imin = i;
        CHECK(std::abs(std::remainder(grid[imin] - 0.5, 1.0)) < 0.02);
    }

    SUBCASE("flux parity") {
        const std::vector<double> fluxes{0.1, 0.2, 0.35, 0.45};
        std::vector<double> neg;
        for (double f : fluxes)
            neg.push_back(-f);
        const auto fwd = transition_energy_curve(p, fluxes, 0.25);
        const auto bwd = transition_energy_curve(p, neg, 0.25);
        for (std::size_t i = 0; i < fluxes.size(); ++i)
            CHECK(fwd[i] == doctest::Approx(bwd[i]).epsilon(1e-12));
    }

    SUBCASE("n_g=0.25 at flux=0.5 against high-truncation oracle") {
        const auto curve = transition_energy_curve(p, {0.5}, 0.25);
        const auto oracle = transition_energy_curve(p, {0.5}, 0.25, {10});
        CHECK(curve[0] == doctest::Approx(oracle[0]).epsilon(1e-9));
        // E_J(0.5)=0: pure charging ladder gives 4 E_C ((1-1/4)^2 - (1/4)^2) = 2 E_C
        CHECK(curve[0] == doctest::Approx(2.0 * p.charging_energy).epsilon(1e-9));
    }

    SUBCASE("empty grid rejected") {
        CHECK_THROWS_AS(transition_energy_curve(p, {}, 0.5), ConfigError);
    }
}

TEST_CASE("truncation convergence across the charge/transmon range") {
    for (double ratio : {0.5, 2.0, 6.0, 10.0}) {
        const double ec = 1.5e9;
        // Deep-transmon ratios spread the eigenstates over many charge states,
        // so the converged-truncation pair grows with E_J/4E_C.
        const CpbParams p{ec, 4.0 * ec * ratio, 0.1, 0.3};
        const auto sa = qubit_spectrum(p, {10}, 5);
        const auto sb = qubit_spectrum(p, {13}, 5);
        for (int k = 0; k < 5; ++k)
            CHECK(std::abs(sb.eigenvalues(k) - sa.eigenvalues(k)) < 1e-6 * ec);
    }
}

TEST_CASE("two-level limit of the charge qubit") {
    const double ec = 5e9;
    for (double ejr : {0.02, 0.05, 0.1}) {
        const double ej = 4.0 * ec * ejr;
        for (double ns : {0.4, 0.45, 0.5, 0.55, 0.6}) {
            const CpbParams p{ec, ej, 0.0, ns};
            const auto s = qubit_spectrum(p, {7}, 2);
            const double eps = 4.0 * ec * (1.0 - 2.0 * ns);
            const double model = std::sqrt(ej * ej + eps * eps);
            CHECK(s.transition(1) == doctest::Approx(model).epsilon(0.01));
        }
    }
}

TEST_CASE("degeneracy point minimizes the transition") {
    const CpbParams p{1.8e9, 11.7e9, 0.3, 0.0};
    double best_ns = 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 200; ++i) {
        const double ns = i / 200.0;
        CpbParams q = p;
        q.n_sigma = ns;
        const double de = qubit_spectrum(q, {7}, 2).transition(1);
        if (de < best) {
            best = de;
            best_ns = ns;
        }
    }
    CHECK(best_ns == doctest::Approx(0.5).epsilon(1e-2));
}

TEST_CASE("flux periodicity of the spectrum") {
    CpbParams p{1.3e9, 12.7e9, 0.21, 0.37};
    const auto a = qubit_spectrum(p, {7}, 5);
    p.flux += 1.0;
    const auto b = qubit_spectrum(p, {7}, 5);
    for (int k = 0; k < 5; ++k)
        CHECK(a.eigenvalues(k) == doctest::Approx(b.eigenvalues(k)).epsilon(1e-9));
}

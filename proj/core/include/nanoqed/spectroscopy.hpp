#pragma once

// Simulated single-tone / two-tone spectroscopy from composite spectra via
// linear response, and resonance-trace fitting.

#include "nanoqed/composite.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nanoqed {

struct ProbeConfig {
    std::vector<double> omega_grid;  // Hz, strictly increasing
    double eta = 5e6;                // phenomenological half-width, Hz
    double n_bar = 0.0;              // average photon number
    bool qp_average = false;         // 50-50 average over n_g and n_g + 0.5

    void validate() const;
};

struct SpectroscopyMap {
    std::vector<double> x_axis;              // flux, Phi/Phi0
    std::vector<double> y_axis;              // frequency, Hz
    std::vector<double> amplitude;           // row-major [y][x], >= 0
    std::vector<double> phase;               // radians, same layout
    std::vector<std::uint8_t> column_failed; // per flux point (byte-wide: written concurrently)
    std::string metadata;                    // parameter echo

    double at(std::size_t iy, std::size_t ix) const {
        return amplitude[iy * x_axis.size() + ix];
    }
};

struct ResponseTrace {
    std::vector<double> amplitude; // over probe.omega_grid, peak-normalized
    std::vector<double> phase;     // radians
};

// A(w) = sum_i p_i sum_f |<f|(a+a')|i>| ^2 * eta^2/((w - (E_f-E_i))^2 + eta^2),
// populations p_i ~ exp(-E_i/T_eff) with T_eff solved by bisection so that
// <a'a> = n_bar (ground state only at n_bar = 0). Normalized so the peak of
// the uncoupled (lambda = 0) reference equals 1.
ResponseTrace linear_response_spectrum(const CompositeSpectrum& spectrum,
                                       const ProbeConfig& probe);

// Per flux point: build, diagonalize, linear response; optional 50-50
// quasiparticle averaging over n_sigma and n_sigma + 0.5. Per-point failures
// become missing-data columns, not aborts. Deterministic and independent of
// the thread count.
SpectroscopyMap single_tone_map(const CpbParams& cpb, const OscillatorParams& osc,
                                const CouplingParams& g, const ChargeBasis& basis,
                                const std::vector<double>& flux_grid,
                                const ProbeConfig& probe, int threads = 1);

// One lowest-transition-energy curve per gate charge, on map axes.
struct TransitionOverlay {
    std::vector<double> flux_grid;
    std::vector<double> n_g_values;
    std::vector<std::vector<double>> curves; // [n_g][flux], Hz
};

TransitionOverlay two_tone_overlay(const CpbParams& cpb,
                                   const std::vector<double>& flux_grid,
                                   const std::vector<double>& n_g_list,
                                   const ChargeBasis& basis = {});

enum class ResonanceModel { lorentzian, hanger };

struct ResonanceFit {
    double f0 = 0.0;        // Hz
    double q_loaded = 0.0;
    double q_internal = 0.0;
    double residual_norm = 0.0;
};

// Least-squares fit of a resonance trace.
//   lorentzian: A(w) = A0 (k/2)^2 / ((w-f0)^2 + (k/2)^2) + B
//   hanger:     A(w) = A0 |1 - (Q_L/Q_c) / (1 + 2i Q_L (w-f0)/f0)|
// with 1/Q_L = 1/Q_i + 1/Q_c.
ResonanceFit fit_resonance(const std::vector<double>& omega,
                           const std::vector<double>& amplitude,
                           ResonanceModel model);

} // namespace nanoqed

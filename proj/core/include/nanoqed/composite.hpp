#pragma once

// Tensor-product Hamiltonian of CPB (x) harmonic mode and its dressed-state
// observables: avoided-crossing gaps and dispersive shifts.

#include "nanoqed/qubit.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nanoqed {

enum class OscillatorLabel { nanoresonator, lc_cavity, cpw_cavity };

struct OscillatorParams {
    double omega = 0.0;            // mode frequency, Hz (omega/2pi)
    int n_fock = 10;               // Fock states 0..n_fock
    double linewidth_kappa = 0.0;  // Hz
    OscillatorLabel label = OscillatorLabel::nanoresonator;

    int dimension() const { return n_fock + 1; }
    void validate() const;
};

struct CouplingParams {
    double lambda = 0.0;           // Hz; sign permitted

    void validate() const;
};

// Assignment of a dressed state to the nearest bare (qubit level, photon
// number) pair. Valid only where the bare-state overlap exceeds 0.5.
struct BareLabel {
    int qubit_level = -1;
    int photon_number = -1;
    double overlap = 0.0;
    bool valid = false;
};

struct CompositeSpectrum {
    Eigen::VectorXd eigenvalues;     // ascending, Hz
    Eigen::MatrixXcd eigenvectors;   // charge (x) Fock basis, row-major pairs
    std::vector<BareLabel> labels;
    int charge_dim = 0;
    int fock_dim = 0;

    // Dressed energy of the state labeled (qubit_level, photon_number).
    // Throws NumericalError if no valid label matches.
    double labeled_energy(int qubit_level, int photon_number) const;
};

inline constexpr int kDefaultDimensionCap = 4096;

// H = H_CPB (x) I + I (x) omega (a'a + 1/2) + lambda (n - n_sigma) (x) (a' + a).
// Basis index = charge_index * fock_dim + fock_index.
HermitianMatrix build_composite_hamiltonian(const CpbParams& cpb,
                                            const OscillatorParams& osc,
                                            const CouplingParams& g,
                                            const ChargeBasis& basis,
                                            int dimension_cap = kDefaultDimensionCap);

// Full diagonalization with bare-state labeling.
CompositeSpectrum composite_spectrum(const CpbParams& cpb, const OscillatorParams& osc,
                                     const CouplingParams& g, const ChargeBasis& basis,
                                     int dimension_cap = kDefaultDimensionCap);

struct CrossingResult {
    double gap = 0.0;          // Hz
    double flux_at_min = 0.0;  // Phi/Phi0
};

// Minimizes the first-to-second excited-state splitting over the flux window
// by golden-section refinement to flux resolution 1e-5. Reports absence of a
// crossing (NumericalError) when the minimum sits at a window boundary.
CrossingResult avoided_crossing_gap(const CpbParams& cpb, const OscillatorParams& osc,
                                    const CouplingParams& g, const ChargeBasis& basis,
                                    double flux_lo, double flux_hi);

// Closed-form dispersive shift chi/2pi, evaluated in frequency units:
//   chi = lambda^2 E_J^2 / (dE (dE^2 - omega^2)),  all quantities in Hz,
// i.e. the full state-dependent cavity pull (the convention under which it
// equals dispersive_chi_numeric). dE is the lowest CPB transition at the
// supplied flux and gate charge.
double dispersive_chi_formula(const CpbParams& cpb, const OscillatorParams& osc,
                              const CouplingParams& g, const ChargeBasis& basis = {});

// Numerical dispersive shift from the labeled composite spectrum:
//   chi_num = [E(e,1) - E(e,0)] - [E(g,1) - E(g,0)].
double dispersive_chi_numeric(const CpbParams& cpb, const OscillatorParams& osc,
                              const CouplingParams& g, const ChargeBasis& basis);

struct ConvergenceReport {
    int n_max = 0;
    int n_fock = 0;
};

// Smallest truncations such that the lowest n_track composite eigenvalues move
// less than tol_factor*E_C upon incrementing either truncation by 2.
ConvergenceReport convergence_report(const CpbParams& cpb, const OscillatorParams& osc,
                                     const CouplingParams& g,
                                     int n_track = 6, double tol_factor = 1e-6,
                                     int dimension_cap = kDefaultDimensionCap);

} // namespace nanoqed

#pragma once

// Cooper-pair-box Hamiltonian in the truncated charge basis.
//
// All energies are stored and reported as frequencies (E/h in Hz); angular
// frequencies are converted at module boundaries.

#include <Eigen/Dense>

#include <vector>

namespace nanoqed {

struct CpbParams {
    double charging_energy = 0.0;     // E_C/h, Hz
    double josephson_energy0 = 0.0;   // E_J0/h, Hz (zero-flux SQUID maximum)
    double flux = 0.0;                // Phi/Phi0
    double n_sigma = 0.0;             // polarization charge, Cooper-pair units
    double junction_asymmetry = 0.0;  // in [0,1)

    void validate() const;            // throws ConfigError on bad values
};

struct ChargeBasis {
    int n_max = 7;                    // charge states n in [-n_max, +n_max]

    int dimension() const { return 2 * n_max + 1; }
    void validate() const;
};

// Dense Hermitian operator on a truncated charge (x Fock) space.
struct HermitianMatrix {
    Eigen::MatrixXcd mat;
    int charge_dim = 0;               // 2*n_max+1
    int fock_dim = 1;                 // 1 for a bare CPB matrix

    int dimension() const { return static_cast<int>(mat.rows()); }
};

struct QubitSpectrum {
    Eigen::VectorXd eigenvalues;      // ascending, Hz
    Eigen::MatrixXcd eigenvectors;    // columns, charge basis
    CpbParams params_echo;

    double transition(int upper, int lower = 0) const {
        return eigenvalues(upper) - eigenvalues(lower);
    }
};

// Effective SQUID Josephson energy:
//   E_J0 * sqrt(cos^2(pi*flux) + asymmetry^2 * sin^2(pi*flux)).
double josephson_energy(double ej0, double flux, double asymmetry = 0.0);

HermitianMatrix build_cpb_hamiltonian(const CpbParams& params, const ChargeBasis& basis);

// Lowest n_levels eigenpairs. Each eigenvector's global phase is fixed by
// making its largest-magnitude component real positive.
QubitSpectrum qubit_spectrum(const CpbParams& params, const ChargeBasis& basis,
                             int n_levels = -1);

// E1 - E0 at every flux grid point, at the given polarization charge.
std::vector<double> transition_energy_curve(const CpbParams& params,
                                            const std::vector<double>& flux_grid,
                                            double n_sigma,
                                            const ChargeBasis& basis = {});

// |<upper| (n - n_sigma) |lower>| matrix element of the charge operator.
double charge_matrix_element(const QubitSpectrum& spectrum, const ChargeBasis& basis,
                             int upper = 1, int lower = 0);

} // namespace nanoqed

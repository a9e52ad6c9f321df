#include "nanoqed/qubit.hpp"

#include "nanoqed/constants.hpp"
#include "nanoqed/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace nanoqed {

void CpbParams::validate() const {
    if (!std::isfinite(charging_energy) || !std::isfinite(josephson_energy0) ||
        !std::isfinite(flux) || !std::isfinite(n_sigma) ||
        !std::isfinite(junction_asymmetry)) {
        throw ConfigError("CpbParams: non-finite parameter value");
    }
    if (charging_energy <= 0.0)
        throw ConfigError("CpbParams: E_C must be > 0");
    if (josephson_energy0 < 0.0)
        throw ConfigError("CpbParams: E_J0 must be >= 0");
    if (junction_asymmetry < 0.0 || junction_asymmetry >= 1.0)
        throw ConfigError("CpbParams: junction_asymmetry must be in [0,1)");
}

void ChargeBasis::validate() const {
    if (n_max < 1)
        throw ConfigError("ChargeBasis: n_max must be >= 1 (dimension >= 3)");
}

double josephson_energy(double ej0, double flux, double asymmetry) {
    const double c = std::cos(constants::pi * flux);
    const double s = std::sin(constants::pi * flux);
    return ej0 * std::sqrt(c * c + asymmetry * asymmetry * s * s);
}

HermitianMatrix build_cpb_hamiltonian(const CpbParams& params, const ChargeBasis& basis) {
    params.validate();
    basis.validate();

    const int dim = basis.dimension();
    const double ej = josephson_energy(params.josephson_energy0, params.flux,
                                       params.junction_asymmetry);

    HermitianMatrix h;
    h.mat = Eigen::MatrixXcd::Zero(dim, dim);
    h.charge_dim = dim;
    h.fock_dim = 1;

    for (int i = 0; i < dim; ++i) {
        const double n = static_cast<double>(i - basis.n_max);
        const double dn = n - params.n_sigma;
        h.mat(i, i) = 4.0 * params.charging_energy * dn * dn;
        if (i + 1 < dim) {
            h.mat(i, i + 1) = -0.5 * ej;
            h.mat(i + 1, i) = -0.5 * ej;
        }
    }
    return h;
}

namespace {

// Global phase: largest-magnitude component made real positive.
void fix_phases(Eigen::MatrixXcd& vectors) {
    for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
        Eigen::Index imax = 0;
        vectors.col(c).cwiseAbs().maxCoeff(&imax);
        const std::complex<double> v = vectors(imax, c);
        const double mag = std::abs(v);
        if (mag > 0.0)
            vectors.col(c) *= std::conj(v) / mag;
    }
}

} // namespace

QubitSpectrum qubit_spectrum(const CpbParams& params, const ChargeBasis& basis,
                             int n_levels) {
    const HermitianMatrix h = build_cpb_hamiltonian(params, basis);
    const int dim = basis.dimension();
    if (n_levels < 0)
        n_levels = dim;
    if (n_levels > dim)
        throw ConfigError("qubit_spectrum: n_levels exceeds basis dimension");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.mat);
    if (solver.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "qubit_spectrum: eigensolver failed to converge (E_C="
            << params.charging_energy << ", E_J0=" << params.josephson_energy0
            << ", flux=" << params.flux << ", n_sigma=" << params.n_sigma << ")";
        throw NumericalError(msg.str());
    }

    QubitSpectrum out;
    out.eigenvalues = solver.eigenvalues().head(n_levels);
    out.eigenvectors = solver.eigenvectors().leftCols(n_levels);
    out.params_echo = params;
    fix_phases(out.eigenvectors);
    return out;
}

std::vector<double> transition_energy_curve(const CpbParams& params,
                                            const std::vector<double>& flux_grid,
                                            double n_sigma,
                                            const ChargeBasis& basis) {
    if (flux_grid.empty())
        throw ConfigError("transition_energy_curve: empty flux grid");

    std::vector<double> curve;
    curve.reserve(flux_grid.size());
    CpbParams p = params;
    p.n_sigma = n_sigma;
    for (double flux : flux_grid) {
        p.flux = flux;
        const QubitSpectrum s = qubit_spectrum(p, basis, 2);
        curve.push_back(s.transition(1));
    }
    return curve;
}

double charge_matrix_element(const QubitSpectrum& spectrum, const ChargeBasis& basis,
                             int upper, int lower) {
    const int dim = basis.dimension();
    Eigen::VectorXd n_op(dim);
    for (int i = 0; i < dim; ++i)
        n_op(i) = static_cast<double>(i - basis.n_max) - spectrum.params_echo.n_sigma;
    const std::complex<double> m =
        spectrum.eigenvectors.col(upper).adjoint() *
        n_op.asDiagonal() * spectrum.eigenvectors.col(lower);
    return std::abs(m);
}

} // namespace nanoqed

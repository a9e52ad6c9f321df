#include "nanoqed/composite.hpp"

#include "nanoqed/constants.hpp"
#include "nanoqed/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace nanoqed {

void OscillatorParams::validate() const {
    if (!std::isfinite(omega) || omega <= 0.0)
        throw ConfigError("OscillatorParams: omega must be finite and > 0");
    if (n_fock < 1)
        throw ConfigError("OscillatorParams: n_fock must be >= 1");
    if (!std::isfinite(linewidth_kappa) || linewidth_kappa < 0.0)
        throw ConfigError("OscillatorParams: linewidth_kappa must be >= 0");
}

void CouplingParams::validate() const {
    if (!std::isfinite(lambda))
        throw ConfigError("CouplingParams: lambda must be finite");
}

double CompositeSpectrum::labeled_energy(int qubit_level, int photon_number) const {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const BareLabel& l = labels[i];
        if (l.valid && l.qubit_level == qubit_level && l.photon_number == photon_number)
            return eigenvalues(static_cast<Eigen::Index>(i));
    }
    std::ostringstream msg;
    msg << "labeled_energy: no dressed state labeled (" << qubit_level << ","
        << photon_number << ") with overlap > 0.5; too close to a crossing";
    throw NumericalError(msg.str());
}

HermitianMatrix build_composite_hamiltonian(const CpbParams& cpb,
                                            const OscillatorParams& osc,
                                            const CouplingParams& g,
                                            const ChargeBasis& basis,
                                            int dimension_cap) {
    cpb.validate();
    osc.validate();
    g.validate();
    basis.validate();

    const int cd = basis.dimension();
    const int fd = osc.dimension();
    const int dim = cd * fd;
    if (dim > dimension_cap) {
        std::ostringstream msg;
        msg << "build_composite_hamiltonian: dimension " << dim
            << " exceeds cap " << dimension_cap;
        throw NumericalError(msg.str());
    }

    const HermitianMatrix hq = build_cpb_hamiltonian(cpb, basis);

    HermitianMatrix h;
    h.mat = Eigen::MatrixXcd::Zero(dim, dim);
    h.charge_dim = cd;
    h.fock_dim = fd;

    // H_CPB (x) I
    for (int i = 0; i < cd; ++i)
        for (int j = 0; j < cd; ++j) {
            const std::complex<double> v = hq.mat(i, j);
            if (v == std::complex<double>(0.0))
                continue;
            for (int k = 0; k < fd; ++k)
                h.mat(i * fd + k, j * fd + k) += v;
        }

    // I (x) omega (a'a + 1/2)
    for (int i = 0; i < cd; ++i)
        for (int k = 0; k < fd; ++k)
            h.mat(i * fd + k, i * fd + k) += osc.omega * (k + 0.5);

    // lambda (n - n_sigma) (x) (a' + a)
    for (int i = 0; i < cd; ++i) {
        const double dn = static_cast<double>(i - basis.n_max) - cpb.n_sigma;
        for (int k = 0; k + 1 < fd; ++k) {
            const double v = g.lambda * dn * std::sqrt(static_cast<double>(k + 1));
            h.mat(i * fd + k, i * fd + k + 1) += v;
            h.mat(i * fd + k + 1, i * fd + k) += v;
        }
    }
    return h;
}

namespace {

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

CompositeSpectrum composite_spectrum(const CpbParams& cpb, const OscillatorParams& osc,
                                     const CouplingParams& g, const ChargeBasis& basis,
                                     int dimension_cap) {
    const HermitianMatrix h =
        build_composite_hamiltonian(cpb, osc, g, basis, dimension_cap);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.mat);
    if (solver.info() != Eigen::Success)
        throw NumericalError("composite_spectrum: eigensolver failed to converge");

    CompositeSpectrum out;
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors();
    out.charge_dim = h.charge_dim;
    out.fock_dim = h.fock_dim;
    fix_phases(out.eigenvectors);

    // Bare products: qubit eigenstate j (x) Fock state k.
    const QubitSpectrum qs = qubit_spectrum(cpb, basis);
    const int cd = h.charge_dim;
    const int fd = h.fock_dim;
    const int dim = cd * fd;

    out.labels.resize(static_cast<std::size_t>(dim));
    for (int col = 0; col < dim; ++col) {
        BareLabel best;
        for (int j = 0; j < cd; ++j) {
            // <bare_jk | dressed> = sum_i conj(q_j(i)) * psi(i*fd + k)
            for (int k = 0; k < fd; ++k) {
                std::complex<double> ov = 0.0;
                for (int i = 0; i < cd; ++i)
                    ov += std::conj(qs.eigenvectors(i, j)) * out.eigenvectors(i * fd + k, col);
                const double p = std::norm(ov);
                if (p > best.overlap) {
                    best.overlap = p;
                    best.qubit_level = j;
                    best.photon_number = k;
                }
            }
        }
        best.valid = best.overlap > 0.5;
        out.labels[static_cast<std::size_t>(col)] = best;
    }
    return out;
}

namespace {

double excited_gap_at(const CpbParams& cpb, const OscillatorParams& osc,
                      const CouplingParams& g, const ChargeBasis& basis, double flux) {
    CpbParams p = cpb;
    p.flux = flux;
    const HermitianMatrix h = build_composite_hamiltonian(p, osc, g, basis);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.mat,
                                                           Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalError("avoided_crossing_gap: eigensolver failed");
    return solver.eigenvalues()(2) - solver.eigenvalues()(1);
}

} // namespace

CrossingResult avoided_crossing_gap(const CpbParams& cpb, const OscillatorParams& osc,
                                    const CouplingParams& g, const ChargeBasis& basis,
                                    double flux_lo, double flux_hi) {
    if (!(flux_lo < flux_hi))
        throw ConfigError("avoided_crossing_gap: empty flux window");

    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;

    // Coarse scan to bracket the minimum, then golden-section refinement.
    constexpr int kScanPoints = 65;
    double best_flux = flux_lo;
    double best_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kScanPoints; ++i) {
        const double f = flux_lo + (flux_hi - flux_lo) * i / (kScanPoints - 1);
        const double gap = excited_gap_at(cpb, osc, g, basis, f);
        if (gap < best_gap) {
            best_gap = gap;
            best_flux = f;
        }
    }

    const double step = (flux_hi - flux_lo) / (kScanPoints - 1);
    double a = std::max(flux_lo, best_flux - step);
    double b = std::min(flux_hi, best_flux + step);

    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = excited_gap_at(cpb, osc, g, basis, c);
    double fd_ = excited_gap_at(cpb, osc, g, basis, d);
    while (b - a > 1e-5) {
        if (fc < fd_) {
            b = d;
            d = c;
            fd_ = fc;
            c = b - invphi * (b - a);
            fc = excited_gap_at(cpb, osc, g, basis, c);
        } else {
            a = c;
            c = d;
            fc = fd_;
            d = a + invphi * (b - a);
            fd_ = excited_gap_at(cpb, osc, g, basis, d);
        }
    }

    CrossingResult result;
    result.flux_at_min = 0.5 * (a + b);
    result.gap = excited_gap_at(cpb, osc, g, basis, result.flux_at_min);

    const double boundary_tol = 2e-5;
    if (result.flux_at_min - flux_lo < boundary_tol ||
        flux_hi - result.flux_at_min < boundary_tol) {
        std::ostringstream msg;
        msg << "avoided_crossing_gap: minimum at window boundary (flux="
            << result.flux_at_min << "); no crossing inside [" << flux_lo << ", "
            << flux_hi << "]";
        throw NumericalError(msg.str());
    }
    return result;
}

double dispersive_chi_formula(const CpbParams& cpb, const OscillatorParams& osc,
                              const CouplingParams& g, const ChargeBasis& basis) {
    cpb.validate();
    osc.validate();
    g.validate();

    const QubitSpectrum qs = qubit_spectrum(cpb, basis, 2);
    const double de = qs.transition(1);
    const double ej = josephson_energy(cpb.josephson_energy0, cpb.flux,
                                       cpb.junction_asymmetry);
    const double w = osc.omega;

    if (std::abs(de - w) < 1e-3 * w) {
        std::ostringstream msg;
        msg << "dispersive_chi_formula: resonance divergence, |dE - omega| = "
            << std::abs(de - w) << " Hz < 1e-3 * omega";
        throw NumericalError(msg.str());
    }

    const double l = g.lambda;
    return l * l * ej * ej / (de * (de * de - w * w));
}

double dispersive_chi_numeric(const CpbParams& cpb, const OscillatorParams& osc,
                              const CouplingParams& g, const ChargeBasis& basis) {
    const CompositeSpectrum cs = composite_spectrum(cpb, osc, g, basis);
    const double eg0 = cs.labeled_energy(0, 0);
    const double eg1 = cs.labeled_energy(0, 1);
    const double ee0 = cs.labeled_energy(1, 0);
    const double ee1 = cs.labeled_energy(1, 1);
    return (ee1 - ee0) - (eg1 - eg0);
}

namespace {

Eigen::VectorXd low_eigenvalues(const CpbParams& cpb, const OscillatorParams& osc,
                                const CouplingParams& g, const ChargeBasis& basis,
                                int n_track, int dimension_cap) {
    const HermitianMatrix h = build_composite_hamiltonian(cpb, osc, g, basis,
                                                          dimension_cap);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.mat,
                                                           Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalError("convergence_report: eigensolver failed");
    return solver.eigenvalues().head(n_track);
}

} // namespace

ConvergenceReport convergence_report(const CpbParams& cpb, const OscillatorParams& osc,
                                     const CouplingParams& g,
                                     int n_track, double tol_factor,
                                     int dimension_cap) {
    const double tol = tol_factor * cpb.charging_energy;

    ConvergenceReport report;
    OscillatorParams o = osc;

    // Converge the Fock truncation first with a generous charge basis,
    // then the charge truncation at the converged Fock size.
    const ChargeBasis wide{9};
    int nf = std::max(osc.n_fock, n_track);
    for (;; nf += 2) {
        o.n_fock = nf;
        if (wide.dimension() * (nf + 3) > dimension_cap)
            throw NumericalError("convergence_report: no Fock convergence below cap");
        const Eigen::VectorXd base = low_eigenvalues(cpb, o, g, wide, n_track,
                                                     dimension_cap);
        o.n_fock = nf + 2;
        const Eigen::VectorXd bumped = low_eigenvalues(cpb, o, g, wide, n_track,
                                                       dimension_cap);
        if ((bumped - base).cwiseAbs().maxCoeff() < tol)
            break;
    }
    report.n_fock = nf;
    o.n_fock = nf;

    for (int nm = 2;; nm += 2) {
        const ChargeBasis b{nm};
        const ChargeBasis b2{nm + 2};
        if (b2.dimension() * o.dimension() > dimension_cap)
            throw NumericalError("convergence_report: no charge convergence below cap");
        if (b.dimension() < n_track)
            continue;
        const Eigen::VectorXd base = low_eigenvalues(cpb, o, g, b, n_track,
                                                     dimension_cap);
        const Eigen::VectorXd bumped = low_eigenvalues(cpb, o, g, b2, n_track,
                                                       dimension_cap);
        if ((bumped - base).cwiseAbs().maxCoeff() < tol) {
            report.n_max = nm;
            break;
        }
    }
    return report;
}

} // namespace nanoqed

#include "nanoqed/spectroscopy.hpp"

#include "nanoqed/constants.hpp"
#include "nanoqed/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

namespace nanoqed {

void ProbeConfig::validate() const {
    if (omega_grid.empty())
        throw ConfigError("ProbeConfig: empty probe grid");
    for (std::size_t i = 1; i < omega_grid.size(); ++i)
        if (omega_grid[i] <= omega_grid[i - 1])
            throw ConfigError("ProbeConfig: omega_grid must be strictly increasing");
    if (!(eta > 0.0))
        throw ConfigError("ProbeConfig: eta must be > 0");
    if (n_bar < 0.0)
        throw ConfigError("ProbeConfig: n_bar must be >= 0");
}

namespace {

// <i| a'a |i> for every dressed state.
Eigen::VectorXd photon_expectations(const CompositeSpectrum& s) {
    const int cd = s.charge_dim;
    const int fd = s.fock_dim;
    const int dim = cd * fd;
    Eigen::VectorXd nums(dim);
    for (int col = 0; col < dim; ++col) {
        double v = 0.0;
        for (int i = 0; i < cd; ++i)
            for (int k = 0; k < fd; ++k)
                v += k * std::norm(s.eigenvectors(i * fd + k, col));
        nums(col) = v;
    }
    return nums;
}

Eigen::VectorXd boltzmann(const Eigen::VectorXd& energies, double t_eff) {
    Eigen::VectorXd p = (-(energies.array() - energies(0)) / t_eff).exp();
    return p / p.sum();
}

// Equilibrium populations with T_eff (in Hz) solved so <a'a> = n_bar.
Eigen::VectorXd populations(const CompositeSpectrum& s, double n_bar) {
    const Eigen::Index dim = s.eigenvalues.size();
    Eigen::VectorXd p = Eigen::VectorXd::Zero(dim);
    if (n_bar == 0.0) {
        p(0) = 1.0;
        return p;
    }

    const Eigen::VectorXd nums = photon_expectations(s);
    const double span = s.eigenvalues(dim - 1) - s.eigenvalues(0);

    auto mean_n = [&](double t) { return boltzmann(s.eigenvalues, t).dot(nums); };

    double t_lo = 1e-9 * span;
    double t_hi = 1e6 * span;
    if (mean_n(t_lo) > n_bar || mean_n(t_hi) < n_bar) {
        std::ostringstream msg;
        msg << "linear_response_spectrum: n_bar = " << n_bar
            << " unreachable within the truncated space (attainable range ["
            << mean_n(t_lo) << ", " << mean_n(t_hi) << "])";
        throw NumericalError(msg.str());
    }
    for (int it = 0; it < 200; ++it) {
        const double t = std::sqrt(t_lo * t_hi);
        if (mean_n(t) < n_bar)
            t_lo = t;
        else
            t_hi = t;
    }
    return boltzmann(s.eigenvalues, std::sqrt(t_lo * t_hi));
}

// (a + a') V, exploiting the tridiagonal Fock structure.
Eigen::MatrixXcd apply_quadrature(const CompositeSpectrum& s) {
    const int cd = s.charge_dim;
    const int fd = s.fock_dim;
    const int dim = cd * fd;
    Eigen::MatrixXcd av = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < cd; ++i)
        for (int k = 0; k < fd; ++k) {
            const int row = i * fd + k;
            if (k > 0)
                av.row(row) += std::sqrt(static_cast<double>(k)) *
                               s.eigenvectors.row(i * fd + k - 1);
            if (k + 1 < fd)
                av.row(row) += std::sqrt(static_cast<double>(k + 1)) *
                               s.eigenvectors.row(i * fd + k + 1);
        }
    return av;
}

struct ResponseTerms {
    std::vector<double> weight;     // p_i |M_fi|^2
    std::vector<double> transition; // E_f - E_i, Hz
};

ResponseTerms response_terms(const CompositeSpectrum& s, const Eigen::VectorXd& p) {
    const Eigen::Index dim = s.eigenvalues.size();
    const Eigen::MatrixXcd av = apply_quadrature(s);

    ResponseTerms terms;
    constexpr double kPopulationCutoff = 1e-12;
    for (Eigen::Index i = 0; i < dim; ++i) {
        if (p(i) < kPopulationCutoff)
            continue;
        const Eigen::VectorXcd m = s.eigenvectors.adjoint() * av.col(i);
        for (Eigen::Index f = 0; f < dim; ++f) {
            const double w = p(i) * std::norm(m(f));
            if (w < 1e-15)
                continue;
            terms.weight.push_back(w);
            terms.transition.push_back(s.eigenvalues(f) - s.eigenvalues(i));
        }
    }
    return terms;
}

} // namespace

ResponseTrace linear_response_spectrum(const CompositeSpectrum& spectrum,
                                       const ProbeConfig& probe) {
    probe.validate();

    const Eigen::VectorXd p = populations(spectrum, probe.n_bar);
    const ResponseTerms terms = response_terms(spectrum, p);

    // Peak of the uncoupled reference: thermal oscillator ladder gives
    // sum_k p_k (k+1) = n_bar + 1 at the bare resonance.
    const double norm = 1.0 + probe.n_bar;
    const double eta = probe.eta;

    ResponseTrace out;
    out.amplitude.reserve(probe.omega_grid.size());
    out.phase.reserve(probe.omega_grid.size());
    for (double w : probe.omega_grid) {
        double a = 0.0;
        std::complex<double> r = 0.0;
        for (std::size_t t = 0; t < terms.weight.size(); ++t) {
            const double detune = w - terms.transition[t];
            a += terms.weight[t] * eta * eta / (detune * detune + eta * eta);
            r += terms.weight[t] / std::complex<double>(-detune, -eta);
        }
        out.amplitude.push_back(a / norm);
        out.phase.push_back(std::arg(r));
    }
    return out;
}

namespace {

void run_parallel(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    const int n = std::min<int>(threads, static_cast<int>(count));
    for (int t = 0; t < n; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                fn(i);
        });
    for (auto& th : pool)
        th.join();
}

} // namespace

SpectroscopyMap single_tone_map(const CpbParams& cpb, const OscillatorParams& osc,
                                const CouplingParams& g, const ChargeBasis& basis,
                                const std::vector<double>& flux_grid,
                                const ProbeConfig& probe, int threads) {
    if (flux_grid.empty())
        throw ConfigError("single_tone_map: empty flux grid");
    probe.validate();

    const std::size_t nx = flux_grid.size();
    const std::size_t ny = probe.omega_grid.size();

    SpectroscopyMap map;
    map.x_axis = flux_grid;
    map.y_axis = probe.omega_grid;
    map.amplitude.assign(nx * ny, std::numeric_limits<double>::quiet_NaN());
    map.phase.assign(nx * ny, std::numeric_limits<double>::quiet_NaN());
    map.column_failed.assign(nx, 0);
    {
        std::ostringstream meta;
        meta << "E_C=" << cpb.charging_energy << " E_J0=" << cpb.josephson_energy0
             << " n_sigma=" << cpb.n_sigma << " omega=" << osc.omega
             << " lambda=" << g.lambda << " n_max=" << basis.n_max
             << " n_fock=" << osc.n_fock << " eta=" << probe.eta
             << " n_bar=" << probe.n_bar << " qp_average=" << probe.qp_average;
        map.metadata = meta.str();
    }

    run_parallel(nx, threads, [&](std::size_t ix) {
        try {
            CpbParams p = cpb;
            p.flux = flux_grid[ix];

            std::vector<double> branches{p.n_sigma};
            if (probe.qp_average)
                branches.push_back(p.n_sigma + 0.5);

            std::vector<double> amp(ny, 0.0);
            std::vector<std::complex<double>> resp(ny, 0.0);
            for (double ns : branches) {
                p.n_sigma = ns;
                const CompositeSpectrum s = composite_spectrum(p, osc, g, basis);
                const ResponseTrace trace = linear_response_spectrum(s, probe);
                for (std::size_t iy = 0; iy < ny; ++iy) {
                    amp[iy] += trace.amplitude[iy] / branches.size();
                    resp[iy] += std::polar(trace.amplitude[iy], trace.phase[iy]) /
                                static_cast<double>(branches.size());
                }
            }
            for (std::size_t iy = 0; iy < ny; ++iy) {
                map.amplitude[iy * nx + ix] = amp[iy];
                map.phase[iy * nx + ix] = std::arg(resp[iy]);
            }
        } catch (const std::exception&) {
            map.column_failed[ix] = 1; // missing-data marker, NaN column
        }
    });
    return map;
}

TransitionOverlay two_tone_overlay(const CpbParams& cpb,
                                   const std::vector<double>& flux_grid,
                                   const std::vector<double>& n_g_list,
                                   const ChargeBasis& basis) {
    TransitionOverlay overlay;
    overlay.flux_grid = flux_grid;
    overlay.n_g_values = n_g_list;
    overlay.curves.reserve(n_g_list.size());
    for (double ng : n_g_list)
        overlay.curves.push_back(transition_energy_curve(cpb, flux_grid, ng, basis));
    return overlay;
}

} // namespace nanoqed

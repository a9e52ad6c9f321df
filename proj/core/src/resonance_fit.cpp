#include "nanoqed/spectroscopy.hpp"

#include "nanoqed/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace nanoqed {

namespace {

using ModelFn = std::function<double(const Eigen::VectorXd&, double)>;

double lorentzian_model(const Eigen::VectorXd& p, double w) {
    // p = (A0, f0, kappa, B)
    const double hw = 0.5 * p(2);
    const double d = w - p(1);
    return p(0) * hw * hw / (d * d + hw * hw) + p(3);
}

double hanger_model(const Eigen::VectorXd& p, double w) {
    // p = (A0, f0, Q_L, Q_c)
    const std::complex<double> s21 =
        1.0 - (p(2) / p(3)) /
                  std::complex<double>(1.0, 2.0 * p(2) * (w - p(1)) / p(1));
    return p(0) * std::abs(s21);
}

Eigen::VectorXd residuals(const ModelFn& model, const Eigen::VectorXd& p,
                          const std::vector<double>& omega,
                          const std::vector<double>& amplitude) {
    Eigen::VectorXd r(static_cast<Eigen::Index>(omega.size()));
    for (std::size_t i = 0; i < omega.size(); ++i)
        r(static_cast<Eigen::Index>(i)) = model(p, omega[i]) - amplitude[i];
    return r;
}

// Levenberg-Marquardt with a forward-difference Jacobian (relative steps).
Eigen::VectorXd levenberg_marquardt(const ModelFn& model, Eigen::VectorXd p,
                                    const std::vector<double>& omega,
                                    const std::vector<double>& amplitude,
                                    double* final_cost) {
    const Eigen::Index np = p.size();
    double mu = 1e-3;
    Eigen::VectorXd r = residuals(model, p, omega, amplitude);
    double cost = r.squaredNorm();

    for (int iter = 0; iter < 300; ++iter) {
        Eigen::MatrixXd jac(r.size(), np);
        for (Eigen::Index j = 0; j < np; ++j) {
            const double step = std::max(std::abs(p(j)) * 1e-7, 1e-12);
            Eigen::VectorXd q = p;
            q(j) += step;
            jac.col(j) = (residuals(model, q, omega, amplitude) - r) / step;
        }

        const Eigen::MatrixXd jtj = jac.transpose() * jac;
        const Eigen::VectorXd jtr = jac.transpose() * r;

        bool accepted = false;
        for (int attempt = 0; attempt < 12 && !accepted; ++attempt) {
            Eigen::MatrixXd a = jtj;
            a.diagonal() += mu * jtj.diagonal().cwiseMax(1e-30);
            const Eigen::VectorXd delta = a.ldlt().solve(jtr);
            const Eigen::VectorXd q = p - delta;
            const Eigen::VectorXd rq = residuals(model, q, omega, amplitude);
            const double cq = rq.squaredNorm();
            if (cq < cost) {
                const double rel = delta.cwiseQuotient(
                                            p.cwiseAbs().cwiseMax(1e-30))
                                       .cwiseAbs()
                                       .maxCoeff();
                p = q;
                r = rq;
                cost = cq;
                mu = std::max(mu * 0.3, 1e-12);
                accepted = true;
                if (rel < 1e-12) {
                    *final_cost = cost;
                    return p;
                }
            } else {
                mu *= 4.0;
            }
        }
        if (!accepted)
            break; // stalled: current p is the minimum within step control
    }
    *final_cost = cost;
    return p;
}

} // namespace

ResonanceFit fit_resonance(const std::vector<double>& omega,
                           const std::vector<double>& amplitude,
                           ResonanceModel model) {
    if (omega.size() != amplitude.size())
        throw ConfigError("fit_resonance: omega/amplitude size mismatch");
    if (omega.size() < 10)
        throw ConfigError("fit_resonance: need at least 10 points");
    for (std::size_t i = 1; i < omega.size(); ++i)
        if (omega[i] <= omega[i - 1])
            throw ConfigError("fit_resonance: omega must be strictly increasing");

    const double amax = *std::max_element(amplitude.begin(), amplitude.end());
    const double amin = *std::min_element(amplitude.begin(), amplitude.end());
    if (!(amax - amin > 1e-12 * std::max(std::abs(amax), 1.0)))
        throw ConfigError("fit_resonance: flat trace, ill-conditioned fit");

    const std::size_t iext =
        model == ResonanceModel::lorentzian
            ? static_cast<std::size_t>(
                  std::max_element(amplitude.begin(), amplitude.end()) -
                  amplitude.begin())
            : static_cast<std::size_t>(
                  std::min_element(amplitude.begin(), amplitude.end()) -
                  amplitude.begin());
    const double f0_guess = omega[iext];

    // Full width at half depth/height: count points past the half level, so a
    // single noisy sample next to the extremum cannot collapse the estimate.
    const double half_level = 0.5 * (amax + amin);
    std::size_t past = 0;
    for (double a : amplitude) {
        const bool in_resonance = model == ResonanceModel::lorentzian
                                      ? a > half_level
                                      : a < half_level;
        if (in_resonance)
            ++past;
    }
    const double mean_spacing =
        (omega.back() - omega.front()) / static_cast<double>(omega.size() - 1);
    const double fwhm = std::max(static_cast<double>(past) * mean_spacing,
                                 (omega.back() - omega.front()) * 1e-6);

    // 2.5x the (noise-biased-high) width estimate ~ three true linewidths.
    if (omega.back() - omega.front() < 2.5 * fwhm)
        throw ConfigError("fit_resonance: trace too narrow (spans < ~3 linewidths)");

    ModelFn fn;
    Eigen::VectorXd p0(4);
    if (model == ResonanceModel::lorentzian) {
        fn = lorentzian_model;
        p0 << amax - amin, f0_guess, fwhm, amin;
    } else {
        fn = hanger_model;
        // Baseline from the off-resonant wings (robust against noise peaks,
        // unlike the raw maximum).
        const std::size_t wing = std::max<std::size_t>(omega.size() / 20, 3);
        double a0 = 0.0;
        for (std::size_t i = 0; i < wing; ++i)
            a0 += amplitude[i] + amplitude[amplitude.size() - 1 - i];
        a0 /= static_cast<double>(2 * wing);
        const double depth = std::clamp(1.0 - amin / a0, 1e-6, 1.0 - 1e-9);
        const double ql = f0_guess / fwhm;
        p0 << a0, f0_guess, ql, ql / depth;
    }

    double cost = 0.0;
    Eigen::VectorXd p = levenberg_marquardt(fn, p0, omega, amplitude, &cost);

    // An occasional hanger run stalls in a nonphysical corner (Q_c <= Q_L);
    // restart once from a weakly coupled guess before giving up.
    if (model == ResonanceModel::hanger && !(p(2) > 0.0 && p(3) > p(2))) {
        Eigen::VectorXd retry = p0;
        retry(3) = 20.0 * p0(2);
        double cost2 = 0.0;
        const Eigen::VectorXd p2 =
            levenberg_marquardt(fn, retry, omega, amplitude, &cost2);
        if (p2(2) > 0.0 && p2(3) > p2(2)) {
            p = p2;
            cost = cost2;
        }
    }

    ResonanceFit fit;
    fit.residual_norm = std::sqrt(cost);
    fit.f0 = p(1);
    if (fit.f0 < omega.front() || fit.f0 > omega.back())
        throw NumericalError("fit_resonance: fitted f0 outside the trace span");

    if (model == ResonanceModel::lorentzian) {
        if (!(p(2) > 0.0))
            throw NumericalError("fit_resonance: nonpositive fitted linewidth");
        fit.q_loaded = fit.f0 / p(2);
        fit.q_internal = fit.q_loaded; // no coupling decomposition in this model
    } else {
        const double ql = p(2);
        const double qc = p(3);
        if (!(ql > 0.0) || !(qc > ql))
            throw NumericalError("fit_resonance: nonphysical Q_L/Q_c recovery");
        fit.q_loaded = ql;
        fit.q_internal = 1.0 / (1.0 / ql - 1.0 / qc);
    }
    return fit;
}

} // namespace nanoqed

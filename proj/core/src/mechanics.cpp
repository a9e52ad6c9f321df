#include "nanoqed/mechanics.hpp"

#include "nanoqed/constants.hpp"
#include "nanoqed/errors.hpp"

#include <cmath>
#include <limits>

namespace nanoqed {

namespace {

using namespace constants;

// Frequency prefactors as quoted for thin-beam in-plane flexure.
constexpr double kFreqConst[3] = {4.73, 7.89, 10.99};

// Roots of cos(a)cosh(a) = 1; the mode shape needs these to full precision
// for the clamping conditions to close.
constexpr double kShapeRoot[3] = {4.730040744862704, 7.853204624095838,
                                  10.995607838001671};

// Clamped-clamped eigenfunction on xi in [0,1], unnormalized.
double shape_raw(double a, double xi) {
    const double sigma = (std::cosh(a) - std::cos(a)) / (std::sinh(a) - std::sin(a));
    return std::cosh(a * xi) - std::cos(a * xi) -
           sigma * (std::sinh(a * xi) - std::sin(a * xi));
}

constexpr int kQuadPoints = 2001; // odd, composite Simpson

double simpson(const std::vector<double>& f, double dx) {
    double sum = f.front() + f.back();
    for (std::size_t i = 1; i + 1 < f.size(); ++i)
        sum += (i % 2 == 1 ? 4.0 : 2.0) * f[i];
    return sum * dx / 3.0;
}

} // namespace

void BeamSpec::validate() const {
    if (width <= 0 || thickness <= 0 || length <= 0 || electrode_length <= 0 ||
        gap <= 0 || density <= 0 || youngs_modulus <= 0)
        throw ConfigError("BeamSpec: all dimensions and material constants must be > 0");
    if (electrode_length > length)
        throw ConfigError("BeamSpec: electrode_length must not exceed length");
    if (beta <= 0.0 || beta > 1.0)
        throw ConfigError("BeamSpec: beta must be in (0, 1]");
}

void BiasCircuit::validate() const {
    if (c_nr <= 0 || c_cpb <= 0 || c_q <= 0 || c_t <= 0)
        throw ConfigError("BiasCircuit: capacitances must be > 0");
    if (z0 < 0)
        throw ConfigError("BiasCircuit: Z0 must be >= 0");
}

ModeResult beam_mode(const BeamSpec& spec, int mode, ModeNormalization norm) {
    spec.validate();
    if (mode < 1 || mode > 3)
        throw ConfigError("beam_mode: mode index must be 1, 2, or 3");

    const double af = kFreqConst[mode - 1];
    const double as = kShapeRoot[mode - 1];

    ModeResult r;
    r.mode_index = mode;
    r.omega = af * af * spec.width / (spec.length * spec.length) *
              std::sqrt(spec.youngs_modulus / (12.0 * spec.density)) / (2.0 * pi);

    r.z_grid.resize(kQuadPoints);
    r.mode_shape.resize(kQuadPoints);
    const double dxi = 1.0 / (kQuadPoints - 1);
    for (int i = 0; i < kQuadPoints; ++i) {
        const double xi = i * dxi;
        r.z_grid[i] = (xi - 0.5) * spec.length;
        r.mode_shape[i] = shape_raw(as, xi);
    }

    double scale;
    if (norm == ModeNormalization::max_deflection) {
        scale = 0.0;
        for (double u : r.mode_shape)
            scale = std::max(scale, std::abs(u));
    } else {
        // Unit center-of-mass displacement: mean of U over the beam is 1.
        std::vector<double> f(r.mode_shape.begin(), r.mode_shape.end());
        scale = simpson(f, dxi);
    }
    if (scale == 0.0)
        throw NumericalError("beam_mode: degenerate mode-shape normalization");
    r.shape_scale = 1.0 / scale;
    for (double& u : r.mode_shape)
        u *= r.shape_scale;

    std::vector<double> u2(kQuadPoints);
    for (int i = 0; i < kQuadPoints; ++i)
        u2[i] = r.mode_shape[i] * r.mode_shape[i];
    r.alpha = simpson(u2, dxi);

    r.effective_mass = r.alpha * spec.density * spec.width * spec.length * spec.thickness;
    r.x_zp = std::sqrt(hbar / (2.0 * r.effective_mass * 2.0 * pi * r.omega));
    return r;
}

CapacitanceGradient capacitance_gradient(const BeamSpec& spec, const ModeResult& mode) {
    spec.validate();

    // Integrate U over the centered electrode span on an odd-count sub-grid.
    const double half = 0.5 * spec.electrode_length / spec.length; // in xi
    const int n = 1001;
    std::vector<double> f(n);
    const double dxi = 2.0 * half / (n - 1);
    const double a = kShapeRoot[mode.mode_index - 1];
    for (int i = 0; i < n; ++i) {
        const double xi = 0.5 - half + i * dxi;
        f[i] = shape_raw(a, xi) * mode.shape_scale;
    }

    CapacitanceGradient out;
    const double integral_m = simpson(f, dxi) * spec.length; // meters
    out.dCdx = constants::epsilon0 * spec.thickness / (spec.gap * spec.gap) * integral_m;
    out.c_nr_parallel_plate =
        constants::epsilon0 * spec.thickness * spec.electrode_length / spec.gap;
    return out;
}

double coupling_lambda(double charging_energy, double dCdx, double v_nr, double x_zp) {
    return -4.0 * charging_energy * dCdx * v_nr * x_zp / constants::elementary_charge;
}

double lambda_max(double charging_energy, double omega_nr, double c_nr, double beta) {
    if (beta <= 0.0 || beta > 1.0)
        throw ConfigError("lambda_max: beta must be in (0, 1]");
    const double e = constants::elementary_charge;
    const double omega_ang = 2.0 * constants::pi * omega_nr;
    return 8.0 * charging_energy *
           std::sqrt(beta * constants::hbar * omega_ang * c_nr / (27.0 * e * e));
}

double lambda_lc(double charging_energy, double c_q, double omega_lc, double c_t) {
    const double v_zp = std::sqrt(constants::hbar * 2.0 * constants::pi * omega_lc /
                                  (2.0 * c_t));
    return 4.0 * charging_energy * c_q * v_zp / constants::elementary_charge;
}

double pullin_voltage(double k_eff, double gap, double c_nr) {
    if (k_eff <= 0 || gap <= 0 || c_nr <= 0)
        throw ConfigError("pullin_voltage: inputs must be > 0");
    return std::sqrt(8.0 * k_eff * gap * gap / (27.0 * c_nr));
}

double effective_spring_constant(const ModeResult& mode) {
    const double omega_ang = 2.0 * constants::pi * mode.omega;
    return mode.effective_mass * omega_ang * omega_ang;
}

DampingResult radiative_damping(double delta_e_hz, const BiasCircuit& circuit) {
    circuit.validate();
    if (delta_e_hz <= 0)
        throw ConfigError("radiative_damping: transition energy must be > 0");

    const double de_over_hbar = 2.0 * constants::pi * delta_e_hz;
    DampingResult r;
    r.gamma = de_over_hbar * de_over_hbar * circuit.c_nr * circuit.c_nr * circuit.z0 /
              circuit.c_cpb;
    if (r.gamma > 0.0) {
        r.t1 = 1.0 / r.gamma;
        r.t2_max = 2.0 * r.t1;
    } else {
        r.t1 = std::numeric_limits<double>::infinity();
        r.t2_max = std::numeric_limits<double>::infinity();
    }
    return r;
}

double thermal_occupation(double omega_hz, double temperature_k) {
    if (omega_hz <= 0)
        throw ConfigError("thermal_occupation: omega must be > 0");
    if (temperature_k < 0)
        throw ConfigError("thermal_occupation: temperature must be >= 0");
    if (temperature_k == 0.0)
        return 0.0;
    const double x = constants::planck_h * omega_hz /
                     (constants::boltzmann_kB * temperature_k);
    return 1.0 / std::expm1(x);
}

} // namespace nanoqed

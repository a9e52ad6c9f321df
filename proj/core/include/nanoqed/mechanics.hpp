#pragma once

// Closed-form electromechanical design calculators: doubly clamped beam
// mechanics, capacitance gradient, coupling strengths, pull-in voltage,
// radiative damping, thermal occupation.

#include <vector>

namespace nanoqed {

struct Material {
    double density = 0.0;        // kg/m^3
    double youngs_modulus = 0.0; // Pa
};

// Implementation constants, not fitted values.
namespace materials {
inline constexpr Material aluminum{2700.0, 70e9};
inline constexpr Material niobium{8570.0, 105e9};
}

struct BeamSpec {
    double width = 0.0;            // w, m
    double thickness = 0.0;        // t, m
    double length = 0.0;           // L, m
    double electrode_length = 0.0; // L_e, m (<= L)
    double gap = 0.0;              // d, m
    double density = 0.0;          // rho, kg/m^3
    double youngs_modulus = 0.0;   // E, Pa
    double beta = 1.0;             // capacitance-gradient correction, (0,1]

    void validate() const;
};

enum class ModeNormalization { max_deflection, center_of_mass };

struct ModeResult {
    int mode_index = 0;
    double omega = 0.0;       // Hz (omega/2pi)
    double alpha = 0.0;       // shape integral, (0,1] under max-normalization
    double effective_mass = 0.0; // kg
    double x_zp = 0.0;        // m
    std::vector<double> z_grid;      // m, spanning [-L/2, L/2]
    std::vector<double> mode_shape;  // U(z), max |U| = 1 by default
    double shape_scale = 1.0;        // raw eigenfunction -> normalized U multiplier
};

struct CapacitanceGradient {
    double dCdx = 0.0;        // F/m
    double c_nr_parallel_plate = 0.0; // eps0 * t * L_e / d, F
};

struct BiasCircuit {
    double c_nr = 0.0;   // F, nanoresonator-island coupling capacitance
    double c_cpb = 0.0;  // F, total CPB island capacitance
    double c_q = 0.0;    // F, cavity-island coupling capacitance
    double c_t = 0.0;    // F, total cavity capacitance
    double z0 = 50.0;    // Ohm, bias-line impedance
    double v_nr = 0.0;   // V, nanoresonator bias

    void validate() const;
};

struct DampingResult {
    double gamma = 0.0;   // 1/s
    double t1 = 0.0;      // s; infinity when gamma == 0
    double t2_max = 0.0;  // s, 2*t1
};

// Clamped-clamped Euler-Bernoulli flexural mode (pure bending):
//   omega = a_i^2 (w/L^2) sqrt(E/12rho) / 2pi,  a = {4.73, 7.89, 10.99}.
// alpha by composite-Simpson quadrature (>= 1001 points) of U(z)^2/L.
ModeResult beam_mode(const BeamSpec& spec, int mode,
                     ModeNormalization norm = ModeNormalization::max_deflection);

// Parallel-plate estimate dC/dx = (eps0 t / d^2) * integral of U over the
// electrode span, referenced to the mode-shape normalization displacement.
CapacitanceGradient capacitance_gradient(const BeamSpec& spec, const ModeResult& mode);

// lambda/2pi = -4 (E_C/h) (dC/dx) (V_NR/e) x_zp; sign preserved.
double coupling_lambda(double charging_energy, double dCdx, double v_nr, double x_zp);

// Pull-in-limited coupling rule of thumb; magnitude of
//   lambda_max = -(8 E_C/hbar) sqrt(beta hbar omega C_NR / 27 e^2), as /2pi.
double lambda_max(double charging_energy, double omega_nr, double c_nr, double beta);

// Cavity coupling lambda_LC/2pi = 4 (E_C/h) (C_Q V_zp / e),
// with V_zp = sqrt(hbar * 2pi*omega / (2 C_T)).
double lambda_lc(double charging_energy, double c_q, double omega_lc, double c_t);

// V_Sn = sqrt(8 k d^2 / 27 C_NR).
double pullin_voltage(double k_eff, double gap, double c_nr);

// Effective spring constant consistent with the effective-mass convention.
double effective_spring_constant(const ModeResult& mode);

// Gamma = (dE/hbar)^2 C_NR^2 Z0 / C_CPB with dE = h * delta_e_hz.
DampingResult radiative_damping(double delta_e_hz, const BiasCircuit& circuit);

// Bose occupation N = 1/(exp(h nu / kB T) - 1); 0 at T = 0.
double thermal_occupation(double omega_hz, double temperature_k);

} // namespace nanoqed

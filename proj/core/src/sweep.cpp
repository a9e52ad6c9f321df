#include "nanoqed/sweep.hpp"

#include "nanoqed/errors.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

namespace nanoqed {

namespace {

void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn) {
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

const CpbParams& require_cpb(const RunConfig& cfg) {
    if (!cfg.cpb)
        throw ConfigError("sweep: system.cpb block is required for this operation");
    return *cfg.cpb;
}

const OscillatorParams& require_oscillator(const RunConfig& cfg) {
    if (!cfg.oscillator)
        throw ConfigError("sweep: system.oscillator block is required for this operation");
    return *cfg.oscillator;
}

const CouplingParams& require_coupling(const RunConfig& cfg) {
    if (!cfg.coupling)
        throw ConfigError("sweep: system.coupling block is required for this operation");
    return *cfg.coupling;
}

CpbParams with_axis(const CpbParams& p, const std::string& axis, double value) {
    CpbParams q = p;
    if (axis == "flux")
        q.flux = value;
    else if (axis == "n_sigma")
        q.n_sigma = value;
    else
        throw ConfigError("sweep: unsupported axis '" + axis +
                          "' (expected flux or n_sigma)");
    return q;
}

// Scalar-valued sweeps share one evaluation harness: per-point failures fill
// NaN and set the trailing `failed` column.
ResultTable scalar_sweep(const RunConfig& cfg, int threads,
                         const std::vector<std::string>& value_columns,
                         const std::vector<std::string>& value_units,
                         const std::function<std::vector<double>(double)>& eval,
                         bool* any_failure) {
    const SweepBlock& sw = *cfg.sweep;
    const std::vector<double> grid = sw.grid();

    ResultTable table;
    table.config_hash = cfg.config_hash;
    table.columns.push_back(sw.axis);
    table.units.push_back(sw.axis == "flux" ? "Phi0" : "dimensionless");
    for (std::size_t i = 0; i < value_columns.size(); ++i) {
        table.columns.push_back(value_columns[i]);
        table.units.push_back(value_units[i]);
    }
    table.columns.push_back("failed");
    table.units.push_back("bool");

    table.rows.assign(grid.size(), {});
    std::atomic<bool> failed_any{false};
    parallel_for(grid.size(), threads, [&](std::size_t i) {
        std::vector<double> row{grid[i]};
        try {
            const std::vector<double> vals = eval(grid[i]);
            row.insert(row.end(), vals.begin(), vals.end());
            row.push_back(0.0);
        } catch (const std::exception&) {
            row.resize(1 + value_columns.size(),
                       std::numeric_limits<double>::quiet_NaN());
            row.push_back(1.0);
            failed_any = true;
        }
        table.rows[i] = std::move(row);
    });
    *any_failure = failed_any;
    return table;
}

} // namespace

SweepResult run_sweep(const RunConfig& cfg, int threads) {
    if (!cfg.sweep)
        throw ConfigError("run_sweep: config has no sweep block");
    const SweepBlock& sw = *cfg.sweep;

    SweepResult result;

    if (sw.op == "josephson-energy") {
        const CpbParams& p = require_cpb(cfg);
        if (sw.axis != "flux")
            throw ConfigError("sweep: josephson-energy supports axis=flux only");
        result.table = scalar_sweep(
            cfg, threads, {"E_J"}, {"Hz"},
            [&](double flux) -> std::vector<double> {
                return {josephson_energy(p.josephson_energy0, flux,
                                         p.junction_asymmetry)};
            },
            &result.any_failure);
    } else if (sw.op == "transition-energy") {
        const CpbParams& p = require_cpb(cfg);
        result.table = scalar_sweep(
            cfg, threads, {"delta_E"}, {"Hz"},
            [&](double v) -> std::vector<double> {
                const QubitSpectrum s = qubit_spectrum(with_axis(p, sw.axis, v),
                                                       cfg.basis, 2);
                return {s.transition(1)};
            },
            &result.any_failure);
    } else if (sw.op == "qubit-spectrum") {
        const CpbParams& p = require_cpb(cfg);
        std::vector<std::string> cols, units;
        for (int k = 0; k < cfg.n_levels; ++k) {
            cols.push_back("E" + std::to_string(k));
            units.push_back("Hz");
        }
        result.table = scalar_sweep(
            cfg, threads, cols, units,
            [&](double v) {
                const QubitSpectrum s =
                    qubit_spectrum(with_axis(p, sw.axis, v), cfg.basis, cfg.n_levels);
                return std::vector<double>(s.eigenvalues.data(),
                                           s.eigenvalues.data() + cfg.n_levels);
            },
            &result.any_failure);
    } else if (sw.op == "chi") {
        const CpbParams& p = require_cpb(cfg);
        const OscillatorParams& o = require_oscillator(cfg);
        const CouplingParams& g = require_coupling(cfg);
        result.table = scalar_sweep(
            cfg, threads, {"chi"}, {"Hz"},
            [&](double v) -> std::vector<double> {
                return {dispersive_chi_formula(with_axis(p, sw.axis, v), o, g,
                                               cfg.basis)};
            },
            &result.any_failure);
    } else if (sw.op == "two-tone") {
        const CpbParams& p = require_cpb(cfg);
        if (sw.axis != "flux")
            throw ConfigError("sweep: two-tone supports axis=flux only");
        const std::vector<double> grid = sw.grid();
        const TransitionOverlay overlay =
            two_tone_overlay(p, grid, cfg.two_tone_n_g, cfg.basis);

        ResultTable table;
        table.config_hash = cfg.config_hash;
        table.columns.push_back("flux");
        table.units.push_back("Phi0");
        for (double ng : overlay.n_g_values) {
            std::ostringstream name;
            name << "delta_E@n_g=" << ng;
            table.columns.push_back(name.str());
            table.units.push_back("Hz");
        }
        table.columns.push_back("failed");
        table.units.push_back("bool");
        for (std::size_t i = 0; i < grid.size(); ++i) {
            std::vector<double> row{grid[i]};
            for (const auto& curve : overlay.curves)
                row.push_back(curve[i]);
            row.push_back(0.0);
            table.rows.push_back(std::move(row));
        }
        result.table = table;
    } else if (sw.op == "single-tone") {
        const CpbParams& p = require_cpb(cfg);
        const OscillatorParams& o = require_oscillator(cfg);
        const CouplingParams& g = require_coupling(cfg);
        if (!cfg.probe)
            throw ConfigError("sweep: single-tone requires a probe block");
        if (sw.axis != "flux")
            throw ConfigError("sweep: single-tone supports axis=flux only");
        result.map = single_tone_map(p, o, g, cfg.basis, sw.grid(),
                                     cfg.probe->to_probe(), threads);
        for (auto f : result.map->column_failed)
            if (f)
                result.any_failure = true;
    } else if (sw.op == "design") {
        result.table = design_report(cfg);
    } else {
        throw ConfigError("sweep: unknown operation '" + sw.op + "'");
    }
    return result;
}

ResultTable design_report(const RunConfig& cfg) {
    if (!cfg.beam)
        throw ConfigError("design: system.beam block is required");
    if (!cfg.bias)
        throw ConfigError("design: system.bias block is required");
    const CpbParams& cpb = require_cpb(cfg);

    const ModeResult mode = beam_mode(*cfg.beam, cfg.beam_mode_index);
    const CapacitanceGradient grad = capacitance_gradient(*cfg.beam, mode);
    const double lam = coupling_lambda(cpb.charging_energy, grad.dCdx,
                                       cfg.bias->v_nr, mode.x_zp);
    const double lmax = lambda_max(cpb.charging_energy, mode.omega, cfg.bias->c_nr,
                                   cfg.beam->beta);
    const double k_eff = effective_spring_constant(mode);
    const double vsn = pullin_voltage(k_eff, cfg.beam->gap, cfg.bias->c_nr);
    const double nth = thermal_occupation(mode.omega, cfg.temperature);

    const QubitSpectrum qs = qubit_spectrum(cpb, cfg.basis, 2);
    const DampingResult damping = radiative_damping(qs.transition(1), *cfg.bias);

    double llc = std::numeric_limits<double>::quiet_NaN();
    if (cfg.oscillator)
        llc = lambda_lc(cpb.charging_energy, cfg.bias->c_q, cfg.oscillator->omega,
                        cfg.bias->c_t);

    ResultTable table;
    table.config_hash = cfg.config_hash;
    table.columns = {"omega_NR", "x_zp", "alpha", "m_eff", "dCdx",  "lambda",
                     "lambda_max", "lambda_LC", "V_Sn", "k_eff", "T1", "N_TH"};
    table.units = {"Hz", "m", "dimensionless", "kg", "F/m", "Hz",
                   "Hz", "Hz", "V", "N/m", "s", "dimensionless"};
    table.rows = {{mode.omega, mode.x_zp, mode.alpha, mode.effective_mass, grad.dCdx,
                   lam, lmax, llc, vsn, k_eff, damping.t1, nth}};
    return table;
}

} // namespace nanoqed

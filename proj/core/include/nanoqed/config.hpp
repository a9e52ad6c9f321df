#pragma once

// Run configuration: one canonical JSON schema for every CLI operation.
// Unknown keys are errors in strict mode, warnings otherwise.

#include "nanoqed/composite.hpp"
#include "nanoqed/mechanics.hpp"
#include "nanoqed/spectroscopy.hpp"

#include <optional>
#include <string>

namespace nanoqed {

enum class SweepSpacing { linear, log };
enum class OutputFormat { csv, json_map };

struct SweepBlock {
    std::string op;          // e.g. "transition-energy", "single-tone"
    std::string axis = "flux";
    double start = 0.0;
    double stop = 1.0;
    int count = 1;
    SweepSpacing spacing = SweepSpacing::linear;

    std::vector<double> grid() const;
};

struct ProbeBlock {
    double omega_start = 0.0;
    double omega_stop = 0.0;
    int omega_count = 0;
    double eta = 5e6;
    double n_bar = 0.0;
    bool qp_average = false;

    ProbeConfig to_probe() const;
};

struct OutputBlock {
    std::string path;
    OutputFormat format = OutputFormat::csv;
    int precision = 17;
};

struct RunConfig {
    std::optional<CpbParams> cpb;
    std::optional<OscillatorParams> oscillator;
    std::optional<CouplingParams> coupling;
    ChargeBasis basis{7};
    std::optional<BeamSpec> beam;
    std::optional<BiasCircuit> bias;
    double temperature = 0.02;   // K, for thermal-occupation reports
    int beam_mode_index = 1;

    std::optional<SweepBlock> sweep;
    std::optional<ProbeBlock> probe;
    OutputBlock output;

    std::vector<double> two_tone_n_g{0.5, 0.375, 0.25};
    int n_levels = 4;            // levels reported by qubit-spectrum sweeps

    std::string config_hash;     // FNV-1a over the canonical serialization
};

RunConfig load_config(const std::string& path, bool strict = true);
RunConfig parse_config(const std::string& text, bool strict = true);

// Canonical serialization: defaults materialized, keys sorted.
std::string serialize_config(const RunConfig& config);

// FNV-1a 64-bit hash of the canonical serialization, as "0x..." hex.
std::string config_hash(const RunConfig& config);

} // namespace nanoqed

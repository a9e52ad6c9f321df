#include "nanoqed/config.hpp"

#include "nanoqed/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace nanoqed {

using nlohmann::json;

std::vector<double> SweepBlock::grid() const {
    if (count < 1)
        throw ConfigError("sweep: count must be >= 1");
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(count));
    if (count == 1) {
        g.push_back(start);
        return g;
    }
    if (spacing == SweepSpacing::linear) {
        for (int i = 0; i < count; ++i)
            g.push_back(start + (stop - start) * i / (count - 1));
    } else {
        if (start <= 0.0 || stop <= 0.0)
            throw ConfigError("sweep: log spacing requires positive endpoints");
        const double ls = std::log(start);
        const double le = std::log(stop);
        for (int i = 0; i < count; ++i)
            g.push_back(std::exp(ls + (le - ls) * i / (count - 1)));
    }
    return g;
}

ProbeConfig ProbeBlock::to_probe() const {
    ProbeConfig p;
    if (omega_count < 1)
        throw ConfigError("probe: omega_count must be >= 1");
    if (omega_count == 1) {
        p.omega_grid.push_back(omega_start);
    } else {
        for (int i = 0; i < omega_count; ++i)
            p.omega_grid.push_back(omega_start +
                                   (omega_stop - omega_start) * i / (omega_count - 1));
    }
    p.eta = eta;
    p.n_bar = n_bar;
    p.qp_average = qp_average;
    return p;
}

namespace {

void check_keys(const json& obj, const std::string& block,
                const std::set<std::string>& known, bool strict) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!known.count(key)) {
            std::ostringstream msg;
            msg << "config: unknown key '" << key << "' in block '" << block << "'";
            if (strict)
                throw ConfigError(msg.str());
            std::cerr << "warning: " << msg.str() << "\n";
        }
    }
}

double require_number(const json& obj, const std::string& block, const std::string& key) {
    if (!obj.contains(key))
        throw ConfigError("config: missing key '" + key + "' in block '" + block + "'");
    if (!obj[key].is_number())
        throw ConfigError("config: key '" + key + "' in block '" + block +
                          "' must be a number");
    return obj[key].get<double>();
}

double number_or(const json& obj, const std::string& block, const std::string& key,
                 double fallback) {
    if (!obj.contains(key))
        return fallback;
    if (!obj[key].is_number())
        throw ConfigError("config: key '" + key + "' in block '" + block +
                          "' must be a number");
    return obj[key].get<double>();
}

CpbParams parse_cpb(const json& j, bool strict) {
    check_keys(j, "system.cpb",
               {"E_C", "E_J0", "flux", "n_sigma", "junction_asymmetry"}, strict);
    CpbParams p;
    p.charging_energy = require_number(j, "system.cpb", "E_C");
    p.josephson_energy0 = require_number(j, "system.cpb", "E_J0");
    p.flux = number_or(j, "system.cpb", "flux", 0.0);
    p.n_sigma = number_or(j, "system.cpb", "n_sigma", 0.0);
    p.junction_asymmetry = number_or(j, "system.cpb", "junction_asymmetry", 0.0);
    try {
        p.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("config: system.cpb: ") + e.what());
    }
    return p;
}

OscillatorParams parse_oscillator(const json& j, bool strict) {
    check_keys(j, "system.oscillator", {"omega", "n_fock", "linewidth_kappa", "label"},
               strict);
    OscillatorParams p;
    p.omega = require_number(j, "system.oscillator", "omega");
    p.n_fock = static_cast<int>(number_or(j, "system.oscillator", "n_fock", 10));
    p.linewidth_kappa = number_or(j, "system.oscillator", "linewidth_kappa", 0.0);
    if (j.contains("label")) {
        const std::string l = j["label"].get<std::string>();
        if (l == "nanoresonator")
            p.label = OscillatorLabel::nanoresonator;
        else if (l == "lc_cavity")
            p.label = OscillatorLabel::lc_cavity;
        else if (l == "cpw_cavity")
            p.label = OscillatorLabel::cpw_cavity;
        else
            throw ConfigError("config: system.oscillator.label must be one of "
                              "nanoresonator|lc_cavity|cpw_cavity");
    }
    try {
        p.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("config: system.oscillator: ") + e.what());
    }
    return p;
}

BeamSpec parse_beam(const json& j, bool strict) {
    check_keys(j, "system.beam",
               {"width", "thickness", "length", "electrode_length", "gap", "density",
                "youngs_modulus", "beta", "material"},
               strict);
    BeamSpec b;
    if (j.contains("material")) {
        const std::string m = j["material"].get<std::string>();
        if (m == "aluminum") {
            b.density = materials::aluminum.density;
            b.youngs_modulus = materials::aluminum.youngs_modulus;
        } else if (m == "niobium") {
            b.density = materials::niobium.density;
            b.youngs_modulus = materials::niobium.youngs_modulus;
        } else {
            throw ConfigError("config: system.beam.material must be aluminum|niobium");
        }
    }
    b.width = require_number(j, "system.beam", "width");
    b.thickness = require_number(j, "system.beam", "thickness");
    b.length = require_number(j, "system.beam", "length");
    b.electrode_length = number_or(j, "system.beam", "electrode_length", b.length);
    b.gap = require_number(j, "system.beam", "gap");
    b.density = number_or(j, "system.beam", "density", b.density);
    b.youngs_modulus = number_or(j, "system.beam", "youngs_modulus", b.youngs_modulus);
    b.beta = number_or(j, "system.beam", "beta", 1.0);
    try {
        b.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("config: system.beam: ") + e.what());
    }
    return b;
}

BiasCircuit parse_bias(const json& j, bool strict) {
    check_keys(j, "system.bias", {"C_NR", "C_CPB", "C_Q", "C_T", "Z0", "V_NR"}, strict);
    BiasCircuit b;
    b.c_nr = require_number(j, "system.bias", "C_NR");
    b.c_cpb = require_number(j, "system.bias", "C_CPB");
    b.c_q = require_number(j, "system.bias", "C_Q");
    b.c_t = require_number(j, "system.bias", "C_T");
    b.z0 = number_or(j, "system.bias", "Z0", 50.0);
    b.v_nr = number_or(j, "system.bias", "V_NR", 0.0);
    try {
        b.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("config: system.bias: ") + e.what());
    }
    return b;
}

} // namespace

RunConfig parse_config(const std::string& text, bool strict) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: parse error: ") + e.what());
    }

    check_keys(j, "<root>", {"system", "sweep", "probe", "output"}, strict);

    RunConfig cfg;
    if (j.contains("system")) {
        const json& sys = j["system"];
        check_keys(sys, "system",
                   {"cpb", "oscillator", "coupling", "basis", "beam", "bias",
                    "temperature", "beam_mode", "two_tone_n_g", "n_levels"},
                   strict);
        if (sys.contains("cpb"))
            cfg.cpb = parse_cpb(sys["cpb"], strict);
        if (sys.contains("oscillator"))
            cfg.oscillator = parse_oscillator(sys["oscillator"], strict);
        if (sys.contains("coupling")) {
            check_keys(sys["coupling"], "system.coupling", {"lambda"}, strict);
            CouplingParams g;
            g.lambda = require_number(sys["coupling"], "system.coupling", "lambda");
            g.validate();
            cfg.coupling = g;
        }
        if (sys.contains("basis")) {
            check_keys(sys["basis"], "system.basis", {"n_max"}, strict);
            cfg.basis.n_max =
                static_cast<int>(require_number(sys["basis"], "system.basis", "n_max"));
            cfg.basis.validate();
        }
        if (sys.contains("beam"))
            cfg.beam = parse_beam(sys["beam"], strict);
        if (sys.contains("bias"))
            cfg.bias = parse_bias(sys["bias"], strict);
        cfg.temperature = number_or(sys, "system", "temperature", 0.02);
        if (cfg.temperature < 0)
            throw ConfigError("config: system.temperature must be >= 0");
        cfg.beam_mode_index = static_cast<int>(number_or(sys, "system", "beam_mode", 1));
        if (sys.contains("two_tone_n_g")) {
            cfg.two_tone_n_g.clear();
            for (const auto& v : sys["two_tone_n_g"])
                cfg.two_tone_n_g.push_back(v.get<double>());
            if (cfg.two_tone_n_g.empty())
                throw ConfigError("config: system.two_tone_n_g must be nonempty");
        }
        cfg.n_levels = static_cast<int>(number_or(sys, "system", "n_levels", 4));
        if (cfg.n_levels < 2 || cfg.n_levels > cfg.basis.dimension())
            throw ConfigError("config: system.n_levels out of range");
    }

    if (j.contains("sweep")) {
        const json& sw = j["sweep"];
        check_keys(sw, "sweep", {"op", "axis", "start", "stop", "count", "spacing"},
                   strict);
        SweepBlock s;
        if (!sw.contains("op"))
            throw ConfigError("config: sweep.op is required");
        s.op = sw["op"].get<std::string>();
        if (sw.contains("axis"))
            s.axis = sw["axis"].get<std::string>();
        s.start = number_or(sw, "sweep", "start", 0.0);
        s.stop = number_or(sw, "sweep", "stop", 1.0);
        s.count = static_cast<int>(number_or(sw, "sweep", "count", 1));
        if (s.count < 1)
            throw ConfigError("config: sweep.count must be >= 1");
        if (sw.contains("spacing")) {
            const std::string sp = sw["spacing"].get<std::string>();
            if (sp == "linear")
                s.spacing = SweepSpacing::linear;
            else if (sp == "log")
                s.spacing = SweepSpacing::log;
            else
                throw ConfigError("config: sweep.spacing must be linear|log");
        }
        cfg.sweep = s;
    }

    if (j.contains("probe")) {
        const json& pr = j["probe"];
        check_keys(pr, "probe",
                   {"omega_start", "omega_stop", "omega_count", "eta", "n_bar",
                    "qp_average"},
                   strict);
        ProbeBlock p;
        p.omega_start = require_number(pr, "probe", "omega_start");
        p.omega_stop = number_or(pr, "probe", "omega_stop", p.omega_start);
        p.omega_count = static_cast<int>(number_or(pr, "probe", "omega_count", 1));
        p.eta = number_or(pr, "probe", "eta", 5e6);
        if (p.eta <= 0)
            throw ConfigError("config: probe.eta must be > 0");
        p.n_bar = number_or(pr, "probe", "n_bar", 0.0);
        if (p.n_bar < 0)
            throw ConfigError("config: probe.n_bar must be >= 0");
        if (pr.contains("qp_average"))
            p.qp_average = pr["qp_average"].get<bool>();
        cfg.probe = p;
    }

    if (j.contains("output")) {
        const json& out = j["output"];
        check_keys(out, "output", {"path", "format", "precision"}, strict);
        if (out.contains("path"))
            cfg.output.path = out["path"].get<std::string>();
        if (out.contains("format")) {
            const std::string f = out["format"].get<std::string>();
            if (f == "csv")
                cfg.output.format = OutputFormat::csv;
            else if (f == "json-map")
                cfg.output.format = OutputFormat::json_map;
            else
                throw ConfigError("config: output.format must be csv|json-map");
        }
        cfg.output.precision = static_cast<int>(number_or(out, "output", "precision", 17));
    }

    cfg.config_hash = config_hash(cfg);
    return cfg;
}

RunConfig load_config(const std::string& path, bool strict) {
    std::ifstream in(path);
    if (!in)
        throw IoError("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), strict);
}

std::string serialize_config(const RunConfig& cfg) {
    json j;
    json sys;
    if (cfg.cpb) {
        sys["cpb"] = {{"E_C", cfg.cpb->charging_energy},
                      {"E_J0", cfg.cpb->josephson_energy0},
                      {"flux", cfg.cpb->flux},
                      {"n_sigma", cfg.cpb->n_sigma},
                      {"junction_asymmetry", cfg.cpb->junction_asymmetry}};
    }
    if (cfg.oscillator) {
        const char* label = cfg.oscillator->label == OscillatorLabel::nanoresonator
                                ? "nanoresonator"
                                : cfg.oscillator->label == OscillatorLabel::lc_cavity
                                      ? "lc_cavity"
                                      : "cpw_cavity";
        sys["oscillator"] = {{"omega", cfg.oscillator->omega},
                             {"n_fock", cfg.oscillator->n_fock},
                             {"linewidth_kappa", cfg.oscillator->linewidth_kappa},
                             {"label", label}};
    }
    if (cfg.coupling)
        sys["coupling"] = {{"lambda", cfg.coupling->lambda}};
    sys["basis"] = {{"n_max", cfg.basis.n_max}};
    if (cfg.beam) {
        sys["beam"] = {{"width", cfg.beam->width},
                       {"thickness", cfg.beam->thickness},
                       {"length", cfg.beam->length},
                       {"electrode_length", cfg.beam->electrode_length},
                       {"gap", cfg.beam->gap},
                       {"density", cfg.beam->density},
                       {"youngs_modulus", cfg.beam->youngs_modulus},
                       {"beta", cfg.beam->beta}};
    }
    if (cfg.bias) {
        sys["bias"] = {{"C_NR", cfg.bias->c_nr},   {"C_CPB", cfg.bias->c_cpb},
                       {"C_Q", cfg.bias->c_q},     {"C_T", cfg.bias->c_t},
                       {"Z0", cfg.bias->z0},       {"V_NR", cfg.bias->v_nr}};
    }
    sys["temperature"] = cfg.temperature;
    sys["beam_mode"] = cfg.beam_mode_index;
    sys["two_tone_n_g"] = cfg.two_tone_n_g;
    sys["n_levels"] = cfg.n_levels;
    j["system"] = sys;

    if (cfg.sweep) {
        j["sweep"] = {{"op", cfg.sweep->op},
                      {"axis", cfg.sweep->axis},
                      {"start", cfg.sweep->start},
                      {"stop", cfg.sweep->stop},
                      {"count", cfg.sweep->count},
                      {"spacing", cfg.sweep->spacing == SweepSpacing::linear ? "linear"
                                                                             : "log"}};
    }
    if (cfg.probe) {
        j["probe"] = {{"omega_start", cfg.probe->omega_start},
                      {"omega_stop", cfg.probe->omega_stop},
                      {"omega_count", cfg.probe->omega_count},
                      {"eta", cfg.probe->eta},
                      {"n_bar", cfg.probe->n_bar},
                      {"qp_average", cfg.probe->qp_average}};
    }
    j["output"] = {{"path", cfg.output.path},
                   {"format", cfg.output.format == OutputFormat::csv ? "csv" : "json-map"},
                   {"precision", cfg.output.precision}};

    return j.dump(2);
}

std::string config_hash(const RunConfig& cfg) {
    RunConfig c = cfg;
    c.config_hash.clear();
    const std::string canonical = serialize_config(c);

    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char b : canonical) {
        h ^= b;
        h *= 0x100000001b3ull;
    }
    std::ostringstream out;
    out << "0x" << std::hex << h;
    return out.str();
}

} // namespace nanoqed

// Command-line frontend: qubit spectra, spectroscopy maps, design reports,
// resonance fits, and generic parameter sweeps driven by a JSON config.
//
// Exit codes: 0 success, 2 config error, 3 numerical failure, 4 I/O error.

#include "nanoqed/config.hpp"
#include "nanoqed/errors.hpp"
#include "nanoqed/io.hpp"
#include "nanoqed/sweep.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct GlobalOptions {
    std::string config_path;
    std::string out_path;
    std::string format;
    int threads = 1;
    long seed = 0; // reserved; all current operations are deterministic
    bool strict = false;
};

int run_operation(const GlobalOptions& opt, const std::string& forced_op) {
    using namespace nanoqed;

    if (opt.config_path.empty())
        throw ConfigError("missing --config PATH");
    RunConfig cfg = load_config(opt.config_path, opt.strict);

    if (!forced_op.empty()) {
        if (!cfg.sweep) {
            SweepBlock sw;
            sw.op = forced_op;
            cfg.sweep = sw;
        } else {
            cfg.sweep->op = forced_op;
        }
        cfg.config_hash = config_hash(cfg);
    }
    if (!opt.format.empty()) {
        if (opt.format == "csv")
            cfg.output.format = OutputFormat::csv;
        else if (opt.format == "json-map")
            cfg.output.format = OutputFormat::json_map;
        else
            throw ConfigError("--format must be csv or json-map");
    }
    if (!opt.out_path.empty())
        cfg.output.path = opt.out_path;

    const SweepResult result = run_sweep(cfg, opt.threads);

    std::string bytes;
    if (result.map) {
        bytes = cfg.output.format == OutputFormat::json_map
                    ? export_map_json(*result.map, cfg.config_hash)
                    : export_map_csv(*result.map, cfg.config_hash,
                                     cfg.output.precision);
    } else {
        if (cfg.output.format == OutputFormat::json_map)
            throw IoError("json-map format applies to spectroscopy maps only");
        bytes = export_table_csv(*result.table, cfg.output.precision);
    }

    if (cfg.output.path.empty())
        std::cout << bytes;
    else
        write_file(cfg.output.path, bytes);

    if (result.any_failure) {
        std::cerr << "nanoqed: some sweep points failed (marked in output)\n";
        return 3;
    }
    return 0;
}

int run_fit(const GlobalOptions& opt, const std::string& trace_path,
            const std::string& model_name) {
    using namespace nanoqed;

    std::vector<double> omega, amplitude;
    read_trace(trace_path, &omega, &amplitude);

    ResonanceModel model;
    if (model_name == "lorentzian")
        model = ResonanceModel::lorentzian;
    else if (model_name == "hanger")
        model = ResonanceModel::hanger;
    else
        throw ConfigError("fit: --model must be lorentzian or hanger");

    const ResonanceFit fit = fit_resonance(omega, amplitude, model);

    std::ostringstream out;
    out.precision(10);
    out << "f0 " << fit.f0 << "\n"
        << "Q_L " << fit.q_loaded << "\n"
        << "Q_i " << fit.q_internal << "\n"
        << "residual_norm " << fit.residual_norm << "\n";
    if (opt.out_path.empty())
        std::cout << out.str();
    else
        write_file(opt.out_path, out.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Superconducting qubit / nanoresonator / cavity design and "
                 "spectroscopy simulator"};
    app.require_subcommand(1);

    GlobalOptions opt;
    app.add_option("--config", opt.config_path, "Path to JSON run config");
    app.add_option("--out", opt.out_path, "Output path (default: stdout)");
    app.add_option("--format", opt.format, "Output format: csv | json-map");
    app.add_option("--threads", opt.threads, "Grid-level parallelism")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", opt.seed,
                   "Reserved; current operations are deterministic and ignore it");
    app.add_flag("--strict", opt.strict, "Treat unknown config keys as errors");

    std::string forced_op;
    auto* sub_qubit = app.add_subcommand("qubit-spectrum",
                                         "Sweep the CPB eigenvalues");
    auto* sub_single = app.add_subcommand("single-tone",
                                          "Simulated single-tone spectroscopy map");
    auto* sub_two = app.add_subcommand("two-tone",
                                       "Transition-energy overlay curves");
    auto* sub_design = app.add_subcommand("design",
                                          "Electromechanical design report");
    auto* sub_sweep = app.add_subcommand("sweep", "Run the config's sweep block as-is");

    auto* sub_fit = app.add_subcommand("fit", "Fit a resonance trace");
    std::string trace_path, model_name = "hanger";
    sub_fit->add_option("--trace", trace_path, "Two-column trace file")->required();
    sub_fit->add_option("--model", model_name, "lorentzian | hanger");

    // Global options are accepted after the subcommand name too.
    for (auto* sub : {sub_qubit, sub_single, sub_two, sub_design, sub_sweep, sub_fit})
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sub_fit->parsed())
            return run_fit(opt, trace_path, model_name);
        if (sub_qubit->parsed())
            forced_op = "qubit-spectrum";
        else if (sub_single->parsed())
            forced_op = "single-tone";
        else if (sub_two->parsed())
            forced_op = "two-tone";
        else if (sub_design->parsed())
            forced_op = "design";
        else if (sub_sweep->parsed())
            forced_op = "";
        return run_operation(opt, forced_op);
    } catch (const nanoqed::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const nanoqed::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const nanoqed::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

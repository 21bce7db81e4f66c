// qbattery_main.cpp — command-line front end
#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "qbattery/harness.hpp"

namespace {

using namespace qb;

void run_simulate(const std::string& config_path, const std::string& engine_override,
                  const std::string& out_path) {
    SimulationConfig config = load_config(config_path);
    if (!engine_override.empty()) {
        config.engine = engine_from_string(engine_override);
    }
    if (config.engine == Engine::meanfield) {
        emit(simulate_meanfield(config.params, config.t_final, config.dt), EmitFormat::csv,
             out_path);
        return;
    }
    if (!config.fock_cutoff_a || !config.fock_cutoff_b) {
        throw validation_error("engine \"liouville\" requires fock_cutoff_a and fock_cutoff_b");
    }
    const FockBasis basis = make_fock_basis(*config.fock_cutoff_a, *config.fock_cutoff_b);
    emit(simulate_liouville(config.params, basis, config.t_final, config.dt), EmitFormat::csv,
         out_path);
}

void run_sweep_command(const std::string& preset_name, const std::string& branch_name,
                       const std::vector<double>& lamb_grid, bool fixed_drive,
                       const std::string& out_path) {
    ScenarioPreset preset = build_preset(preset_name);
    if (!branch_name.empty()) {
        preset.branch = branch_from_string(branch_name);
    }
    if (!lamb_grid.empty()) {
        preset.lamb_grid = lamb_grid;
    }
    SweepOptions options;
    options.fixed_drive = fixed_drive;
    emit(run_sweep(preset, options), EmitFormat::csv, out_path);
}

void run_eigen(const std::string& config_path) {
    const SimulationConfig config = load_config(config_path);
    const SupermodeDecomposition modes = supermode_decomposition(validate(config.params));
    std::cout << "{\"lambda_plus\":" << format_number(modes.lambda_plus)
              << ",\"lambda_minus\":" << format_number(modes.lambda_minus)
              << ",\"sin_alpha\":" << format_number(modes.sin_alpha)
              << ",\"cos_alpha\":" << format_number(modes.cos_alpha)
              << ",\"drive_plus\":" << format_number(modes.drive_plus)
              << ",\"drive_minus\":" << format_number(modes.drive_minus) << "}\n";
}

void run_oracle_check(const std::string& config_path) {
    const OracleCheckResult result = oracle_check(load_config(config_path));
    std::cout << "{\"max_dev_a\":" << format_number(result.max_dev_a)
              << ",\"max_dev_b\":" << format_number(result.max_dev_b)
              << ",\"max_trace_err\":" << format_number(result.max_trace_err)
              << ",\"max_trunc_tail\":" << format_number(result.max_trunc_tail) << "}\n";
}

}  // namespace

namespace {

int run(int argc, char** argv) {
    CLI::App app{"Driven-dissipative two-mode quantum battery simulator"};
    app.require_subcommand(1);

    std::string config_path, engine_override, out_path;
    auto* simulate = app.add_subcommand("simulate", "Run one trajectory and write CSV");
    simulate->add_option("--config", config_path, "JSON config file")->required();
    simulate->add_option("--engine", engine_override, "meanfield or liouville");
    simulate->add_option("--out", out_path, "output path (default: stdout)");

    std::string preset_name, branch_name;
    std::vector<double> lamb_grid;
    bool fixed_drive = false;
    std::string sweep_out;
    auto* sweep = app.add_subcommand("sweep", "Sweep the Lamb shift over a preset scenario");
    sweep->add_option("--preset", preset_name, "fig1_weak_resonant, fig2_strong_resonant, fig3_strong_detuned")
        ->required();
    sweep->add_option("--branch", branch_name, "plus or minus (default: minus)");
    sweep->add_option("--lamb-grid", lamb_grid, "comma-separated Delta_L values")
        ->delimiter(',');
    sweep->add_flag("--fixed-drive", fixed_drive,
                    "freeze omega_f at its Delta_L = 0 value instead of tracking the shift");
    sweep->add_option("--out", sweep_out, "output path (default: stdout)");

    std::string eigen_config;
    auto* eigen = app.add_subcommand("eigen", "Print the supermode decomposition as JSON");
    eigen->add_option("--config", eigen_config, "JSON config file")->required();

    std::string oracle_config;
    auto* oracle = app.add_subcommand("oracle-check",
                                      "Compare mean-field and Lindblad engines on one config");
    oracle->add_option("--config", oracle_config, "JSON config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : 1;  // --help is a success, any flag misuse is 1
    }

    if (simulate->parsed()) {
        run_simulate(config_path, engine_override, out_path);
    } else if (sweep->parsed()) {
        run_sweep_command(preset_name, branch_name, lamb_grid, fixed_drive, sweep_out);
    } else if (eigen->parsed()) {
        run_eigen(eigen_config);
    } else if (oracle->parsed()) {
        run_oracle_check(oracle_config);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const qb::numeric_error& err) {
        std::cerr << "numerical failure: " << err.what() << "\n";
        return 2;
    } catch (const qb::validation_error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}

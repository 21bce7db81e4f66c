// harness.hpp — scenario presets, Lamb-shift sweeps, engines, CSV/JSON emission
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qbattery/eigenmodes.hpp"
#include "qbattery/liouville.hpp"
#include "qbattery/meanfield.hpp"
#include "qbattery/model.hpp"

namespace qb {

struct ScenarioPreset {
    std::string name;
    SystemParams base_params;  // drive_frequency left unresolved (set per sweep point)
    Branch branch = Branch::minus;
    std::vector<double> lamb_grid;
};

// Known presets: fig1_weak_resonant, fig2_strong_resonant, fig3_strong_detuned.
ScenarioPreset build_preset(std::string_view name);

struct SweepRow {
    double delta_l = 0.0;
    Branch branch = Branch::minus;
    double omega_f_used = 0.0;
    double w_a_final = 0.0;
    double w_b_final = 0.0;
    double w_a_peak = 0.0;
    double w_b_peak = 0.0;
    double t_settle = 0.0;
    std::string error;  // empty on success; failed points carry NaN values

    bool ok() const { return error.empty(); }
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

struct SweepOptions {
    Engine engine = Engine::meanfield;
    double t_final = 200.0;
    double dt = 0.01;
    bool fixed_drive = false;            // freeze omega_f at its Delta_L = 0 value
    std::optional<FockBasis> basis;      // required for the liouville engine
};

// One simulation per Delta_L in the preset grid, omega_f tracking the shifted
// eigenvalue of the chosen branch. Points run concurrently; failed points are
// recorded and the remaining grid continues.
SweepResult run_sweep(const ScenarioPreset& preset, const SweepOptions& options = {});

// contrast(Delta_L) = [w_b_final(plus) - w_b_final(minus)] / their sum.
// The sign flip of this quantity across Delta_L = 0 is the switching effect.
std::vector<double> switching_contrast(const SweepResult& result_minus,
                                       const SweepResult& result_plus);

// Mean-field engine: closed form when defined, RK4 fallback on secular drive.
TimeSeries simulate_meanfield(const SystemParams& params, double t_final, double dt);

struct LiouvilleSeries {
    TimeSeries series;
    std::vector<double> trace_err;
    std::vector<double> trunc_tail;
};

LiouvilleSeries simulate_liouville(const SystemParams& params, const FockBasis& basis,
                                   double t_final, double dt);

struct OracleCheckResult {
    double max_dev_a = 0.0;
    double max_dev_b = 0.0;
    double max_trace_err = 0.0;
    double max_trunc_tail = 0.0;
};

// Runs both engines on one configuration and reports the worst first-moment
// deviation between them.
OracleCheckResult oracle_check(const SimulationConfig& config);

// Locale-independent decimal formatting, 12 significant digits.
std::string format_number(double value);

enum class EmitFormat { csv, json };

void emit_csv(const TimeSeries& series, std::ostream& out);
void emit_csv(const LiouvilleSeries& series, std::ostream& out);
void emit_csv(const SweepResult& result, std::ostream& out);
void emit_json(const TimeSeries& series, std::ostream& out);
void emit_json(const LiouvilleSeries& series, std::ostream& out);
void emit_json(const SweepResult& result, std::ostream& out);

// File destinations; an empty path or "-" writes to standard output.
// I/O failures are reported with path context.
void emit(const TimeSeries& series, EmitFormat format, const std::string& path);
void emit(const LiouvilleSeries& series, EmitFormat format, const std::string& path);
void emit(const SweepResult& result, EmitFormat format, const std::string& path);

}  // namespace qb

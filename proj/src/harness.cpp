// harness.cpp
#include "qbattery/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <limits>

#include "qbattery/ergotropy.hpp"

namespace qb {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

SystemParams figure_base(double omega_a, double omega_b, double g) {
    SystemParams params;
    params.omega_a = omega_a;
    params.omega_b = omega_b;
    params.g = g;
    params.drive_amplitude = 0.1;
    params.gamma_a = 0.05;
    params.n_thermal = 0.0;
    params.drive_frequency = 1.0;  // unresolved; set per sweep point
    return params;
}

complexd sparse_expectation(const DenseOp& rho, const SparseOp& op) {
    complexd acc{0.0, 0.0};
    for (int outer = 0; outer < op.outerSize(); ++outer) {
        for (SparseOp::InnerIterator it(op, outer); it; ++it) {
            acc += rho(it.col(), it.row()) * it.value();
        }
    }
    return acc;
}

// First t after which w_b stays within 2% of its final value.
double settle_time(const TimeSeries& series) {
    const auto& records = series.records;
    const double final_wb = records.back().w_b;
    const double band = 0.02 * final_wb;
    std::size_t first_settled = 0;
    for (std::size_t i = records.size(); i-- > 0;) {
        if (std::abs(records[i].w_b - final_wb) > band) {
            first_settled = i + 1;
            break;
        }
    }
    return records[first_settled].t;
}

SweepRow sweep_point(const ScenarioPreset& preset, const SweepOptions& options,
                     double delta_l) {
    SweepRow row;
    row.delta_l = delta_l;
    row.branch = preset.branch;
    try {
        SystemParams params = validate(preset.base_params);
        params.lamb_shift = delta_l;
        SystemParams freq_source = params;
        if (options.fixed_drive) {
            freq_source.lamb_shift = 0.0;
        }
        params.drive_frequency = resonant_drive_frequency(validate(freq_source), preset.branch);
        validate(params);
        row.omega_f_used = params.drive_frequency;

        TimeSeries series;
        if (options.engine == Engine::meanfield) {
            series = simulate_meanfield(params, options.t_final, options.dt);
        } else {
            series = simulate_liouville(params, *options.basis, options.t_final,
                                        options.dt).series;
        }
        row.w_a_final = series.records.back().w_a;
        row.w_b_final = series.records.back().w_b;
        row.w_a_peak = 0.0;
        row.w_b_peak = 0.0;
        for (const TimeSeriesRecord& record : series.records) {
            row.w_a_peak = std::max(row.w_a_peak, record.w_a);
            row.w_b_peak = std::max(row.w_b_peak, record.w_b);
        }
        row.t_settle = settle_time(series);
    } catch (const std::exception& err) {
        row.error = err.what();
        row.w_a_final = row.w_b_final = kNan;
        row.w_a_peak = row.w_b_peak = kNan;
        row.t_settle = kNan;
    }
    return row;
}

}  // namespace

ScenarioPreset build_preset(std::string_view name) {
    ScenarioPreset preset;
    preset.name = std::string(name);
    preset.branch = Branch::minus;
    preset.lamb_grid = {-0.2, -0.1, 0.0, 0.1, 0.2};
    if (name == "fig1_weak_resonant") {
        preset.base_params = figure_base(1.0, 1.0, 0.16);
    } else if (name == "fig2_strong_resonant") {
        preset.base_params = figure_base(1.0, 1.0, 1.6);
    } else if (name == "fig3_strong_detuned") {
        preset.base_params = figure_base(2.0 / 3.0, 1.0, 1.6);
    } else {
        throw validation_error("unknown preset \"" + preset.name +
                               "\"; valid presets: fig1_weak_resonant, "
                               "fig2_strong_resonant, fig3_strong_detuned");
    }
    return preset;
}

SweepResult run_sweep(const ScenarioPreset& preset, const SweepOptions& options) {
    if (options.engine == Engine::liouville && !options.basis) {
        throw validation_error("liouville sweeps require Fock cutoffs");
    }
    std::vector<std::future<SweepRow>> pending;
    pending.reserve(preset.lamb_grid.size());
    for (double delta_l : preset.lamb_grid) {
        pending.push_back(std::async(std::launch::async, sweep_point, std::cref(preset),
                                     std::cref(options), delta_l));
    }
    SweepResult result;
    result.rows.reserve(pending.size());
    for (auto& future : pending) {
        result.rows.push_back(future.get());
    }
    return result;
}

std::vector<double> switching_contrast(const SweepResult& result_minus,
                                       const SweepResult& result_plus) {
    if (result_minus.rows.size() != result_plus.rows.size()) {
        throw validation_error("mismatched sweep grids");
    }
    std::vector<double> contrast;
    contrast.reserve(result_minus.rows.size());
    for (std::size_t i = 0; i < result_minus.rows.size(); ++i) {
        const SweepRow& minus = result_minus.rows[i];
        const SweepRow& plus = result_plus.rows[i];
        if (minus.delta_l != plus.delta_l) {
            throw validation_error("mismatched sweep grids");
        }
        if (!minus.ok() || !plus.ok()) {
            contrast.push_back(kNan);
            continue;
        }
        const double sum = plus.w_b_final + minus.w_b_final;
        contrast.push_back(sum == 0.0 ? 0.0 : (plus.w_b_final - minus.w_b_final) / sum);
    }
    return contrast;
}

TimeSeries simulate_meanfield(const SystemParams& params, double t_final, double dt) {
    validate(params);
    Trajectory trajectory;
    try {
        trajectory = sample_closed_form(params, AmplitudePair{}, t_final, dt);
    } catch (const numeric_error&) {
        // secular resonant drive: no bounded particular solution, step instead
        trajectory = integrate(params, AmplitudePair{}, t_final, dt);
    }
    return annotate(trajectory, params);
}

LiouvilleSeries simulate_liouville(const SystemParams& params, const FockBasis& basis,
                                   double t_final, double dt) {
    validate(params);
    const LadderOperators ops = build_operators(basis);
    LiouvilleSeries out;
    Trajectory trajectory;
    evolve_observe(vacuum_state(basis), params, t_final, dt, 1,
                   [&](double t, const DensityMatrix& rho) {
                       const complexd to_lab = std::polar(1.0, -params.drive_frequency * t);
                       trajectory.push_back({t,
                                             {to_lab * sparse_expectation(rho.elements, ops.a),
                                              to_lab * sparse_expectation(rho.elements, ops.b)}});
                       out.trace_err.push_back(std::abs(rho.elements.trace() - complexd(1.0)));
                       out.trunc_tail.push_back(truncation_tail(rho));
                   });
    out.series = annotate(trajectory, params);
    return out;
}

OracleCheckResult oracle_check(const SimulationConfig& config) {
    if (!config.fock_cutoff_a || !config.fock_cutoff_b) {
        throw validation_error("oracle check requires fock_cutoff_a and fock_cutoff_b");
    }
    const FockBasis basis = make_fock_basis(*config.fock_cutoff_a, *config.fock_cutoff_b);
    const TimeSeries meanfield = simulate_meanfield(config.params, config.t_final, config.dt);
    const LiouvilleSeries liouville =
        simulate_liouville(config.params, basis, config.t_final, config.dt);

    OracleCheckResult result;
    const std::size_t count =
        std::min(meanfield.records.size(), liouville.series.records.size());
    for (std::size_t i = 0; i < count; ++i) {
        const TimeSeriesRecord& mf = meanfield.records[i];
        const TimeSeriesRecord& lv = liouville.series.records[i];
        result.max_dev_a = std::max(result.max_dev_a, std::abs(lv.a - mf.a));
        result.max_dev_b = std::max(result.max_dev_b, std::abs(lv.b - mf.b));
    }
    for (double err : liouville.trace_err) {
        result.max_trace_err = std::max(result.max_trace_err, err);
    }
    for (double tail : liouville.trunc_tail) {
        result.max_trunc_tail = std::max(result.max_trunc_tail, tail);
    }
    return result;
}

std::string format_number(double value) {
    char buffer[40];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                      std::chars_format::general, 12);
    return std::string(buffer, result.ptr);
}

namespace {

void csv_record(std::ostream& out, const TimeSeriesRecord& record) {
    out << format_number(record.t) << ',' << format_number(record.a.real()) << ','
        << format_number(record.a.imag()) << ',' << format_number(record.b.real()) << ','
        << format_number(record.b.imag()) << ',' << format_number(record.w_a) << ','
        << format_number(record.w_b);
}

void json_record(std::ostream& out, const TimeSeriesRecord& record) {
    out << "{\"t\":" << format_number(record.t)
        << ",\"re_a\":" << format_number(record.a.real())
        << ",\"im_a\":" << format_number(record.a.imag())
        << ",\"re_b\":" << format_number(record.b.real())
        << ",\"im_b\":" << format_number(record.b.imag())
        << ",\"w_a\":" << format_number(record.w_a)
        << ",\"w_b\":" << format_number(record.w_b);
}

std::string json_number(double value) {
    if (!std::isfinite(value)) {
        return "null";
    }
    return format_number(value);
}

std::string escaped(const std::string& text) {
    std::string out;
    for (char c : text) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

void emit_csv(const TimeSeries& series, std::ostream& out) {
    out << "t,re_a,im_a,re_b,im_b,w_a,w_b\n";
    for (const TimeSeriesRecord& record : series.records) {
        csv_record(out, record);
        out << '\n';
    }
}

void emit_csv(const LiouvilleSeries& series, std::ostream& out) {
    out << "t,re_a,im_a,re_b,im_b,w_a,w_b,trace_err,trunc_tail\n";
    for (std::size_t i = 0; i < series.series.records.size(); ++i) {
        csv_record(out, series.series.records[i]);
        out << ',' << format_number(series.trace_err[i]) << ','
            << format_number(series.trunc_tail[i]) << '\n';
    }
}

void emit_csv(const SweepResult& result, std::ostream& out) {
    out << "delta_l,branch,omega_f_used,w_a_final,w_b_final,w_a_peak,w_b_peak,t_settle\n";
    for (const SweepRow& row : result.rows) {
        out << format_number(row.delta_l) << ',' << to_string(row.branch) << ','
            << format_number(row.omega_f_used) << ',' << format_number(row.w_a_final) << ','
            << format_number(row.w_b_final) << ',' << format_number(row.w_a_peak) << ','
            << format_number(row.w_b_peak) << ',' << format_number(row.t_settle) << '\n';
    }
}

void emit_json(const TimeSeries& series, std::ostream& out) {
    out << '[';
    for (std::size_t i = 0; i < series.records.size(); ++i) {
        if (i > 0) out << ',';
        json_record(out, series.records[i]);
        out << '}';
    }
    out << "]\n";
}

void emit_json(const LiouvilleSeries& series, std::ostream& out) {
    out << '[';
    for (std::size_t i = 0; i < series.series.records.size(); ++i) {
        if (i > 0) out << ',';
        json_record(out, series.series.records[i]);
        out << ",\"trace_err\":" << format_number(series.trace_err[i])
            << ",\"trunc_tail\":" << format_number(series.trunc_tail[i]) << '}';
    }
    out << "]\n";
}

void emit_json(const SweepResult& result, std::ostream& out) {
    out << '[';
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        const SweepRow& row = result.rows[i];
        if (i > 0) out << ',';
        out << "{\"delta_l\":" << json_number(row.delta_l)
            << ",\"branch\":\"" << to_string(row.branch) << '"'
            << ",\"omega_f_used\":" << json_number(row.omega_f_used)
            << ",\"w_a_final\":" << json_number(row.w_a_final)
            << ",\"w_b_final\":" << json_number(row.w_b_final)
            << ",\"w_a_peak\":" << json_number(row.w_a_peak)
            << ",\"w_b_peak\":" << json_number(row.w_b_peak)
            << ",\"t_settle\":" << json_number(row.t_settle);
        if (!row.ok()) {
            out << ",\"error\":\"" << escaped(row.error) << '"';
        }
        out << '}';
    }
    out << "]\n";
}

namespace {

template <typename T>
void emit_impl(const T& value, EmitFormat format, const std::string& path) {
    const auto write = [&](std::ostream& out) {
        if (format == EmitFormat::csv) {
            emit_csv(value, out);
        } else {
            emit_json(value, out);
        }
    };
    if (path.empty() || path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw validation_error("cannot open output file: " + path);
    }
    write(out);
    out.flush();
    if (!out) {
        throw validation_error("error writing output file: " + path);
    }
}

}  // namespace

void emit(const TimeSeries& series, EmitFormat format, const std::string& path) {
    emit_impl(series, format, path);
}

void emit(const LiouvilleSeries& series, EmitFormat format, const std::string& path) {
    emit_impl(series, format, path);
}

void emit(const SweepResult& result, EmitFormat format, const std::string& path) {
    emit_impl(result, format, path);
}

}  // namespace qb

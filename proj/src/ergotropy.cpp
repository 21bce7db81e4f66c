// ergotropy.cpp
#include "qbattery/ergotropy.hpp"

#include <cmath>

namespace qb {

double ergotropy_from_amplitude(double omega_i, complexd amplitude) {
    if (!(omega_i > 0.0)) {
        throw validation_error("non-positive mode frequency");
    }
    return omega_i * std::norm(amplitude);
}

TimeSeries annotate(const Trajectory& series, const SystemParams& params) {
    TimeSeries out;
    out.records.reserve(series.size());
    double previous_t = -1.0;
    for (const MeanFieldState& state : series) {
        if (!out.records.empty() && !(state.t > previous_t)) {
            throw validation_error("trajectory sample times must be strictly increasing");
        }
        previous_t = state.t;
        out.records.push_back({state.t, state.amplitudes.a, state.amplitudes.b,
                               ergotropy_from_amplitude(params.omega_a, state.amplitudes.a),
                               ergotropy_from_amplitude(params.omega_b, state.amplitudes.b)});
    }
    return out;
}

std::vector<EnergyRecord> energy_records(const TimeSeries& series) {
    std::vector<EnergyRecord> out;
    out.reserve(series.records.size());
    for (const TimeSeriesRecord& record : series.records) {
        out.push_back({record.t, record.w_a, record.w_b});
    }
    return out;
}

}  // namespace qb

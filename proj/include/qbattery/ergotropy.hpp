// ergotropy.hpp — extractable energy from mean-field amplitudes
#pragma once

#include <vector>

#include "qbattery/meanfield.hpp"
#include "qbattery/model.hpp"

namespace qb {

struct EnergyRecord {
    double t;
    double w_a;  // charger extractable energy
    double w_b;  // battery ergotropy
};

// W = omega_i |<o>|^2 for a ground-state-initialized oscillator mode.
// Phase-invariant: depends on the amplitude only through its modulus.
double ergotropy_from_amplitude(double omega_i, complexd amplitude);

// Attaches w_a = omega_a |a|^2 and w_b = omega_b |b|^2 to every record.
// Energies are weighted by the bare mode frequencies; the Lamb shift enters
// the dynamics only. Requires strictly increasing sample times.
TimeSeries annotate(const Trajectory& series, const SystemParams& params);

std::vector<EnergyRecord> energy_records(const TimeSeries& series);

}  // namespace qb

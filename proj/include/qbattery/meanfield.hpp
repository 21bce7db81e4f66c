// meanfield.hpp — amplitude equations: RK4 integrator and rotating-frame closed form
#pragma once

#include <vector>

#include "qbattery/model.hpp"

namespace qb {

struct MeanFieldState {
    double t = 0.0;
    AmplitudePair amplitudes;
};

// Raw amplitude trajectory; energies are attached by ergotropy::annotate.
using Trajectory = std::vector<MeanFieldState>;

struct TimeSeriesRecord {
    double t;
    complexd a;
    complexd b;
    double w_a;
    double w_b;
};

struct TimeSeries {
    std::vector<TimeSeriesRecord> records;
};

// Lab-frame amplitude derivatives:
//   da/dt = -i F e^{-i w_f t} - i g b - (gamma_a/2 + i omega_a') a
//   db/dt = -i g a - i omega_b b
// Valid in the N = 0 regime; throws validation_error otherwise.
AmplitudePair rhs(double t, const AmplitudePair& state, const SystemParams& params);

// Resolution guard: dt must not exceed 0.1 / max(omega_a', omega_b, lambda_plus).
double max_admissible_dt(const SystemParams& params);

// Fixed-step classical RK4 from t = 0 to t_final, sampled every dt.
// Record count is floor(t_final/dt) + 1.
Trajectory integrate(const SystemParams& params, const AmplitudePair& initial,
                     double t_final, double dt);

// Exact solution of the linear system in the frame rotating at the drive
// frequency, where x~' = M x~ + c is autonomous. Reusable across sample times.
class ClosedFormSolution {
public:
    ClosedFormSolution(const SystemParams& params, const AmplitudePair& initial);

    // Lab-frame amplitudes at time t >= 0.
    AmplitudePair at(double t) const;

    // Rotating-frame particular solution -M^{-1} c.
    AmplitudePair particular() const { return {xp_a_, xp_b_}; }

private:
    complexd m11_, m12_, m21_, m22_;  // rotating-frame generator
    complexd mu_mean_;                // trace(M)/2
    complexd delta_;                  // sqrt(mu_mean^2 - det M), Re >= 0
    complexd xp_a_, xp_b_;            // particular solution
    complexd dev_a_, dev_b_;          // initial deviation from it
    double drive_frequency_;
};

// Lab-frame amplitudes at a single time.
AmplitudePair closed_form(const SystemParams& params, const AmplitudePair& initial,
                          double t);

// Closed-form trajectory on the same sample grid as integrate().
Trajectory sample_closed_form(const SystemParams& params, const AmplitudePair& initial,
                              double t_final, double dt);

// Rotating-frame steady state -M^{-1} c; requires gamma_a > 0.
AmplitudePair steady_state(const SystemParams& params);

}  // namespace qb

// meanfield.cpp
#include "qbattery/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qbattery/eigenmodes.hpp"

namespace qb {

namespace {

constexpr complexd kImag{0.0, 1.0};

void require_zero_temperature(const SystemParams& params) {
    if (params.n_thermal != 0.0) {
        throw validation_error("mean-field engine valid only at N = 0");
    }
}

// Sample count such that samples sit at k*dt, k = 0..steps. The nudge absorbs
// representation error in t_final/dt without ever adding a spurious step.
long step_count(double t_final, double dt) {
    return static_cast<long>(std::floor(t_final / dt + 1e-9));
}

}  // namespace

AmplitudePair rhs(double t, const AmplitudePair& state, const SystemParams& params) {
    require_zero_temperature(params);
    const complexd decay_half(0.5 * params.gamma_a, params.omega_a_prime());
    const complexd drive =
        -kImag * params.drive_amplitude * std::polar(1.0, -params.drive_frequency * t);
    return {drive - kImag * params.g * state.b - decay_half * state.a,
            -kImag * params.g * state.a - kImag * params.omega_b * state.b};
}

double max_admissible_dt(const SystemParams& params) {
    const Eigenfrequencies lambda = eigenfrequencies(coupling_matrix(params));
    const double fastest =
        std::max({params.omega_a_prime(), params.omega_b, lambda.lambda_plus});
    return 0.1 / fastest;
}

Trajectory integrate(const SystemParams& params, const AmplitudePair& initial,
                     double t_final, double dt) {
    require_zero_temperature(params);
    if (!(t_final > 0.0) || !std::isfinite(t_final)) {
        throw validation_error("t_final must be positive");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw validation_error("dt must be positive");
    }
    const double dt_max = max_admissible_dt(params);
    if (dt > dt_max) {
        throw validation_error("dt too coarse for the fastest mode; maximal admissible dt = " +
                               std::to_string(dt_max));
    }

    const long steps = step_count(t_final, dt);
    Trajectory out;
    out.reserve(static_cast<std::size_t>(steps) + 1);
    AmplitudePair x = initial;
    out.push_back({0.0, x});
    for (long k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        const AmplitudePair k1 = rhs(t, x, params);
        const AmplitudePair k2 =
            rhs(t + 0.5 * dt, {x.a + 0.5 * dt * k1.a, x.b + 0.5 * dt * k1.b}, params);
        const AmplitudePair k3 =
            rhs(t + 0.5 * dt, {x.a + 0.5 * dt * k2.a, x.b + 0.5 * dt * k2.b}, params);
        const AmplitudePair k4 = rhs(t + dt, {x.a + dt * k3.a, x.b + dt * k3.b}, params);
        x.a += dt / 6.0 * (k1.a + 2.0 * k2.a + 2.0 * k3.a + k4.a);
        x.b += dt / 6.0 * (k1.b + 2.0 * k2.b + 2.0 * k3.b + k4.b);
        out.push_back({static_cast<double>(k + 1) * dt, x});
    }
    return out;
}

ClosedFormSolution::ClosedFormSolution(const SystemParams& params,
                                       const AmplitudePair& initial) {
    require_zero_temperature(params);
    drive_frequency_ = params.drive_frequency;
    const double detuning_a = params.omega_a_prime() - params.drive_frequency;
    const double detuning_b = params.omega_b - params.drive_frequency;
    m11_ = complexd(-0.5 * params.gamma_a, -detuning_a);
    m12_ = complexd(0.0, -params.g);
    m21_ = m12_;
    m22_ = complexd(0.0, -detuning_b);
    const complexd c1(0.0, -params.drive_amplitude);

    // Particular solution of x~' = M x~ + c with c = (-iF, 0).
    if (params.drive_amplitude == 0.0) {
        xp_a_ = xp_b_ = 0.0;
    } else if (params.g == 0.0) {
        // Decoupled battery row; its zero particular solution is always valid.
        if (m11_ == complexd(0.0, 0.0)) {
            throw numeric_error("resonant undamped drive: secular growth, no steady state");
        }
        xp_a_ = -c1 / m11_;
        xp_b_ = 0.0;
    } else {
        const complexd det = m11_ * m22_ - m12_ * m21_;
        const double scale = std::max({std::abs(m11_), std::abs(m12_), std::abs(m22_)});
        if (std::abs(det) <= 1e-14 * scale * scale) {
            throw numeric_error("resonant undamped drive: secular growth, no steady state");
        }
        xp_a_ = -c1 * m22_ / det;
        xp_b_ = c1 * m21_ / det;
    }

    mu_mean_ = 0.5 * (m11_ + m22_);
    const complexd det = m11_ * m22_ - m12_ * m21_;
    delta_ = std::sqrt(mu_mean_ * mu_mean_ - det);
    if (delta_.real() < 0.0 || (delta_.real() == 0.0 && delta_.imag() < 0.0)) {
        delta_ = -delta_;  // exp((mu - delta) t) then stays bounded for t >= 0
    }
    dev_a_ = initial.a - xp_a_;
    dev_b_ = initial.b - xp_b_;
}

AmplitudePair ClosedFormSolution::at(double t) const {
    // exp(Mt) = E0 I + E1 (M - mu I) with E0 = e^{mu t} cosh(delta t) and
    // E1 = e^{mu t} sinh(delta t)/delta; series below |delta t| ~ 1e-8.
    const complexd theta = delta_ * t;
    const complexd scale = std::exp(mu_mean_ * t);
    complexd e0, e1;
    if (std::abs(theta) < 1e-8) {
        e0 = scale * (1.0 + 0.5 * theta * theta);
        e1 = scale * t * (1.0 + theta * theta / 6.0);
    } else if (theta.real() > 350.0) {
        // cosh/sinh would overflow on their own; both exponents are damped.
        const complexd s1 = std::exp((mu_mean_ + delta_) * t);
        const complexd s2 = std::exp((mu_mean_ - delta_) * t);
        e0 = 0.5 * (s1 + s2);
        e1 = 0.5 * (s1 - s2) / delta_;
    } else {
        e0 = scale * std::cosh(theta);
        e1 = scale * std::sinh(theta) / delta_;
    }
    const complexd rot_a =
        e0 * dev_a_ + e1 * ((m11_ - mu_mean_) * dev_a_ + m12_ * dev_b_) + xp_a_;
    const complexd rot_b =
        e0 * dev_b_ + e1 * (m21_ * dev_a_ + (m22_ - mu_mean_) * dev_b_) + xp_b_;
    const complexd to_lab = std::polar(1.0, -drive_frequency_ * t);
    return {to_lab * rot_a, to_lab * rot_b};
}

AmplitudePair closed_form(const SystemParams& params, const AmplitudePair& initial,
                          double t) {
    return ClosedFormSolution(params, initial).at(t);
}

Trajectory sample_closed_form(const SystemParams& params, const AmplitudePair& initial,
                              double t_final, double dt) {
    if (!(t_final > 0.0) || !std::isfinite(t_final)) {
        throw validation_error("t_final must be positive");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw validation_error("dt must be positive");
    }
    const ClosedFormSolution solution(params, initial);
    const long steps = step_count(t_final, dt);
    Trajectory out;
    out.reserve(static_cast<std::size_t>(steps) + 1);
    for (long k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        out.push_back({t, solution.at(t)});
    }
    return out;
}

AmplitudePair steady_state(const SystemParams& params) {
    if (!(params.gamma_a > 0.0)) {
        throw numeric_error("no steady state without dissipation");
    }
    return ClosedFormSolution(params, AmplitudePair{}).particular();
}

}  // namespace qb

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qbattery/eigenmodes.hpp"
#include "qbattery/ergotropy.hpp"
#include "qbattery/meanfield.hpp"

using namespace qb;

namespace {

SystemParams fig1_params() {
    SystemParams p;
    p.omega_a = 1.0;
    p.omega_b = 1.0;
    p.g = 0.16;
    p.drive_amplitude = 0.1;
    p.gamma_a = 0.05;
    p.drive_frequency = 1.0;
    p.drive_frequency = resonant_drive_frequency(validate(p), Branch::minus);
    return p;
}

}  // namespace

TEST_CASE("ergotropy from amplitude") {
    CHECK(ergotropy_from_amplitude(1.0, {0.0, 0.0}) == 0.0);
    CHECK(ergotropy_from_amplitude(1.0, {0.0, -4.0}) == 16.0);
    CHECK(ergotropy_from_amplitude(2.0, {1.0, 1.0}) == 4.0);
    CHECK_THROWS_AS(ergotropy_from_amplitude(0.0, {1.0, 0.0}), validation_error);
}

TEST_CASE("ergotropy is phase invariant") {
    const complexd amplitude{0.7, -1.3};
    const double reference = ergotropy_from_amplitude(1.5, amplitude);
    for (double phase = 0.0; phase < 6.4; phase += 0.32) {
        const double rotated =
            ergotropy_from_amplitude(1.5, amplitude * std::polar(1.0, phase));
        CHECK(rotated == doctest::Approx(reference).epsilon(1e-15));
    }
}

TEST_CASE("annotate: zero trajectory gives zero energies") {
    Trajectory trajectory;
    for (int k = 0; k <= 10; ++k) trajectory.push_back({0.1 * k, {}});
    const TimeSeries series = annotate(trajectory, fig1_params());
    for (const TimeSeriesRecord& record : series.records) {
        CHECK(record.w_a == 0.0);
        CHECK(record.w_b == 0.0);
    }
}

TEST_CASE("annotate: energies satisfy the definition on every record") {
    const SystemParams p = fig1_params();
    const TimeSeries series = annotate(sample_closed_form(p, {}, 20.0, 0.01), p);
    CHECK(series.records.size() == 2001);
    for (const TimeSeriesRecord& record : series.records) {
        CHECK(record.w_a == p.omega_a * std::norm(record.a));
        CHECK(record.w_b == p.omega_b * std::norm(record.b));
    }
}

TEST_CASE("annotate: Rabi exchange conserves total energy on resonance") {
    SystemParams p;
    p.omega_a = 1.0;
    p.omega_b = 1.0;
    p.g = 0.16;
    p.drive_frequency = 1.0;
    validate(p);
    const TimeSeries series = annotate(integrate(p, {1.0, 0.0}, 50.0, 0.005), p);
    for (const TimeSeriesRecord& record : series.records) {
        CHECK(std::abs(record.w_a + record.w_b - 1.0) < 1e-10);
    }
}

TEST_CASE("annotate: energies plateau at the steady-state prediction") {
    const SystemParams p = fig1_params();
    const TimeSeries series = annotate(sample_closed_form(p, {}, 800.0, 0.05), p);
    const AmplitudePair ss = steady_state(p);
    const double w_a_ss = ergotropy_from_amplitude(p.omega_a, ss.a);
    const double w_b_ss = ergotropy_from_amplitude(p.omega_b, ss.b);
    CHECK(series.records.back().w_a == doctest::Approx(w_a_ss).epsilon(1e-3));
    CHECK(series.records.back().w_b == doctest::Approx(w_b_ss).epsilon(1e-3));
}

TEST_CASE("annotate: frame phases do not change the energies") {
    const SystemParams p = fig1_params();
    const Trajectory lab = sample_closed_form(p, {}, 10.0, 0.01);
    Trajectory rotating = lab;
    for (MeanFieldState& state : rotating) {
        const complexd to_rot = std::polar(1.0, p.drive_frequency * state.t);
        state.amplitudes.a *= to_rot;
        state.amplitudes.b *= to_rot;
    }
    const TimeSeries lab_series = annotate(lab, p);
    const TimeSeries rot_series = annotate(rotating, p);
    for (std::size_t i = 0; i < lab_series.records.size(); ++i) {
        CHECK(lab_series.records[i].w_a ==
              doctest::Approx(rot_series.records[i].w_a).epsilon(1e-14));
        CHECK(lab_series.records[i].w_b ==
              doctest::Approx(rot_series.records[i].w_b).epsilon(1e-14));
    }
}

TEST_CASE("annotate: quadratic scaling in the drive amplitude") {
    SystemParams p = fig1_params();
    const TimeSeries base = annotate(sample_closed_form(p, {}, 50.0, 0.02), p);
    p.drive_amplitude = 0.2;
    const TimeSeries doubled = annotate(sample_closed_form(p, {}, 50.0, 0.02), p);
    for (std::size_t i = 0; i < base.records.size(); ++i) {
        if (base.records[i].w_a == 0.0 || base.records[i].w_b == 0.0) continue;
        CHECK(doubled.records[i].w_b / base.records[i].w_b ==
              doctest::Approx(4.0).epsilon(1e-10));
        CHECK(doubled.records[i].w_a / base.records[i].w_a ==
              doctest::Approx(4.0).epsilon(1e-10));
    }
}

TEST_CASE("annotate rejects non-increasing sample times") {
    Trajectory trajectory{{0.0, {}}, {0.0, {}}};
    CHECK_THROWS_AS(annotate(trajectory, fig1_params()), validation_error);
}

TEST_CASE("energy records mirror the time series") {
    const SystemParams p = fig1_params();
    const TimeSeries series = annotate(sample_closed_form(p, {}, 5.0, 0.01), p);
    const auto energies = energy_records(series);
    REQUIRE(energies.size() == series.records.size());
    CHECK(energies.back().w_b == series.records.back().w_b);
    CHECK(energies.back().t == series.records.back().t);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "qbattery/model.hpp"

using namespace qb;

namespace {

SystemParams fig1_params() {
    SystemParams p;
    p.omega_a = 1.0;
    p.omega_b = 1.0;
    p.g = 0.16;
    p.drive_amplitude = 0.1;
    p.drive_frequency = 0.84;
    p.gamma_a = 0.05;
    p.lamb_shift = 0.0;
    p.n_thermal = 0.0;
    return p;
}

}  // namespace

TEST_CASE("validate accepts the weak-coupling figure parameters") {
    const SystemParams p = fig1_params();
    const SystemParams out = validate(p);
    CHECK(out.g == p.g);
    CHECK(out.drive_frequency == p.drive_frequency);
}

TEST_CASE("validate rejects a negative decay rate by name") {
    SystemParams p = fig1_params();
    p.gamma_a = -0.05;
    CHECK_THROWS_WITH_AS(validate(p), "negative decay rate", validation_error);
}

TEST_CASE("validate rejects a Lamb shift that inverts the charger level") {
    SystemParams p = fig1_params();
    p.lamb_shift = -1.5;
    CHECK_THROWS_WITH_AS(validate(p), "renormalized frequency non-positive", validation_error);
}

TEST_CASE("validate rejects non-finite and out-of-domain parameters") {
    SystemParams p = fig1_params();
    p.omega_b = std::nan("");
    CHECK_THROWS_AS(validate(p), validation_error);
    p = fig1_params();
    p.omega_a = 0.0;
    CHECK_THROWS_AS(validate(p), validation_error);
    p = fig1_params();
    p.drive_frequency = 0.0;
    CHECK_THROWS_AS(validate(p), validation_error);
    // negative drive frequencies are legal: lambda_minus < 0 for g > omega
    p.drive_frequency = -0.6;
    CHECK(validate(p).drive_frequency == -0.6);
    p = fig1_params();
    p.n_thermal = -0.1;
    CHECK_THROWS_AS(validate(p), validation_error);
    p = fig1_params();
    p.g = -0.16;
    CHECK_THROWS_AS(validate(p), validation_error);
}

TEST_CASE("validate is idempotent on random valid draws") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> freq(0.2, 3.0);
    std::uniform_real_distribution<double> small(0.0, 0.5);
    for (int i = 0; i < 200; ++i) {
        SystemParams p;
        p.omega_a = freq(rng);
        p.omega_b = freq(rng);
        p.g = small(rng);
        p.drive_amplitude = small(rng);
        p.drive_frequency = freq(rng);
        p.gamma_a = small(rng);
        p.lamb_shift = small(rng) - 0.1;
        p.n_thermal = small(rng);
        if (p.omega_a_prime() <= 0.0) continue;
        const SystemParams once = validate(p);
        const SystemParams twice = validate(once);
        CHECK(once.omega_a == twice.omega_a);
        CHECK(once.lamb_shift == twice.lamb_shift);
        CHECK(once.n_thermal == twice.n_thermal);
    }
}

TEST_CASE("thermal occupation limits") {
    CHECK(thermal_occupation(1.0, 0.0) == 0.0);
    // omega/T = ln 2 gives exactly one quantum on average
    CHECK(thermal_occupation(std::log(2.0), 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(thermal_occupation(1.0, 10.0) == doctest::Approx(9.50833194477505).epsilon(1e-12));
}

TEST_CASE("thermal occupation is monotone in temperature") {
    double previous = thermal_occupation(1.0, 0.05);
    for (double temperature = 0.1; temperature <= 20.0; temperature += 0.1) {
        const double current = thermal_occupation(1.0, temperature);
        CHECK(current > previous);
        previous = current;
    }
}

TEST_CASE("thermal occupation approaches the classical limit") {
    const double omega = 1.0, temperature = 1000.0;
    const double occupation = thermal_occupation(omega, temperature);
    CHECK(occupation * omega / temperature == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("thermal occupation rejects out-of-domain input") {
    CHECK_THROWS_AS(thermal_occupation(0.0, 1.0), validation_error);
    CHECK_THROWS_AS(thermal_occupation(1.0, -1.0), validation_error);
}

TEST_CASE("config parsing round trip") {
    const std::string text = R"({
        "omega_a": 1.0, "omega_b": 1.0, "g": 0.16,
        "drive_amplitude": 0.1, "drive_frequency": 0.84,
        "gamma_a": 0.05, "lamb_shift": 0.0, "n_thermal": 0.0,
        "t_final": 50.0, "dt": 0.01,
        "engine": "liouville", "fock_cutoff_a": 10, "fock_cutoff_b": 10
    })";
    const SimulationConfig config = parse_config(text);
    CHECK(config.params.g == 0.16);
    CHECK(config.t_final == 50.0);
    CHECK(config.engine == Engine::liouville);
    CHECK(config.fock_cutoff_a.value() == 10);
}

TEST_CASE("config defaults apply when optional keys are absent") {
    const std::string text = R"({
        "omega_a": 1.0, "omega_b": 1.0, "g": 0.16,
        "drive_amplitude": 0.1, "drive_frequency": 0.84,
        "gamma_a": 0.05, "lamb_shift": 0.0, "n_thermal": 0.0
    })";
    const SimulationConfig config = parse_config(text);
    CHECK(config.t_final == 200.0);
    CHECK(config.dt == 0.01);
    CHECK(config.engine == Engine::meanfield);
    CHECK_FALSE(config.fock_cutoff_a.has_value());
}

TEST_CASE("config rejects unknown keys") {
    const std::string text = R"({
        "omega_a": 1.0, "omega_b": 1.0, "g": 0.16,
        "drive_amplitude": 0.1, "drive_frequency": 0.84,
        "gamma_a": 0.05, "lamb_shift": 0.0, "n_thermal": 0.0,
        "gama_a": 0.05
    })";
    CHECK_THROWS_WITH_AS(parse_config(text), "unknown config key(s): gama_a", validation_error);
}

TEST_CASE("config rejects missing required keys and bad types") {
    CHECK_THROWS_AS(parse_config(R"({"omega_a": 1.0})"), validation_error);
    CHECK_THROWS_AS(parse_config("not json"), validation_error);
    CHECK_THROWS_AS(parse_config("[1, 2]"), validation_error);
    const std::string bad_engine = R"({
        "omega_a": 1.0, "omega_b": 1.0, "g": 0.16,
        "drive_amplitude": 0.1, "drive_frequency": 0.84,
        "gamma_a": 0.05, "lamb_shift": 0.0, "n_thermal": 0.0,
        "engine": "exact"
    })";
    CHECK_THROWS_AS(parse_config(bad_engine), validation_error);
}

TEST_CASE("liouville engine requires cutoffs in the config") {
    const std::string text = R"({
        "omega_a": 1.0, "omega_b": 1.0, "g": 0.16,
        "drive_amplitude": 0.1, "drive_frequency": 0.84,
        "gamma_a": 0.05, "lamb_shift": 0.0, "n_thermal": 0.0,
        "engine": "liouville"
    })";
    CHECK_THROWS_AS(parse_config(text), validation_error);
}

// model.hpp — physical parameters, validation, thermal occupation, config parsing
#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace qb {

using complexd = std::complex<double>;

// Rejected before any dynamics ran (bad parameter, malformed config).
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Failure of the dynamics themselves (secular drive, truncation blow-up).
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// All quantities in units of the reference frequency omega; hbar = k_B = 1.
struct SystemParams {
    double omega_a = 1.0;          // charger frequency
    double omega_b = 1.0;          // battery frequency
    double g = 0.0;                // coherent coupling strength
    double drive_amplitude = 0.0;  // F
    double drive_frequency = 1.0;  // omega_f
    double gamma_a = 0.0;          // charger decay rate
    double lamb_shift = 0.0;       // Delta_L, signed (redshift < 0)
    double n_thermal = 0.0;        // mean bath occupation N(T)

    // Renormalized charger frequency omega_a' = omega_a + Delta_L. Dynamics
    // must depend on omega_a and lamb_shift only through this sum.
    double omega_a_prime() const { return omega_a + lamb_shift; }
};

// Returns params unchanged if all invariants hold; throws validation_error
// naming the first violated invariant.
SystemParams validate(const SystemParams& params);

// Bose-Einstein occupation 1/(exp(omega/T) - 1); exactly 0 at T = 0.
double thermal_occupation(double omega, double temperature);

struct AmplitudePair {
    complexd a{0.0, 0.0};
    complexd b{0.0, 0.0};
};

enum class Engine { meanfield, liouville };

Engine engine_from_string(const std::string& name);
std::string to_string(Engine engine);

// Flat JSON configuration file. The eight physical keys are required;
// t_final, dt, engine carry defaults; Fock cutoffs are required only for
// the liouville engine. Unknown keys are rejected.
struct SimulationConfig {
    SystemParams params;
    double t_final = 200.0;
    double dt = 0.01;
    Engine engine = Engine::meanfield;
    std::optional<int> fock_cutoff_a;
    std::optional<int> fock_cutoff_b;
};

SimulationConfig parse_config(const std::string& json_text);
SimulationConfig load_config(const std::string& path);

}  // namespace qb

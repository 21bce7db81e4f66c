// eigenmodes.cpp
#include "qbattery/eigenmodes.hpp"

#include <cmath>

namespace qb {

Branch branch_from_string(const std::string& name) {
    if (name == "plus") return Branch::plus;
    if (name == "minus") return Branch::minus;
    throw validation_error("unknown branch \"" + name + "\" (expected plus or minus)");
}

std::string to_string(Branch branch) {
    return branch == Branch::plus ? "plus" : "minus";
}

CouplingMatrix coupling_matrix(const SystemParams& params) {
    return {params.omega_a_prime(), params.g, params.g, params.omega_b};
}

Eigenfrequencies eigenfrequencies(const CouplingMatrix& coupling) {
    const double mean = 0.5 * (coupling.m11 + coupling.m22);
    // hypot keeps the resonant Delta_L = 0 limit exact: lambda_pm = omega +- g.
    const double split = std::hypot(0.5 * (coupling.m11 - coupling.m22), coupling.m12);
    return {mean + split, mean - split};
}

SupermodeDecomposition supermode_decomposition(const SystemParams& params) {
    if (params.g <= 0.0) {
        throw validation_error("supermodes undefined for decoupled system");
    }
    const Eigenfrequencies lambda = eigenfrequencies(coupling_matrix(params));
    // The lambda_plus eigenvector of [[omega_a', g], [g, omega_b]] is
    // proportional to (omega_b - lambda_plus, -g); pairing the numerator with
    // omega_b keeps (sin_alpha, cos_alpha) an exact eigenvector for detuned
    // systems and reduces to the resonant expression at omega_a = omega_b.
    const double gap = params.omega_b - lambda.lambda_plus;
    const double norm = std::hypot(params.g, gap);
    const double sin_alpha = gap / norm;
    const double cos_alpha = -params.g / norm;
    return {lambda.lambda_plus,
            lambda.lambda_minus,
            sin_alpha,
            cos_alpha,
            params.drive_amplitude * sin_alpha,
            params.drive_amplitude * cos_alpha};
}

double resonant_drive_frequency(const SystemParams& params, Branch branch) {
    const Eigenfrequencies lambda = eigenfrequencies(coupling_matrix(params));
    return branch == Branch::plus ? lambda.lambda_plus : lambda.lambda_minus;
}

}  // namespace qb

// eigenmodes.hpp — coupling matrix, renormalized eigenfrequencies, supermodes
#pragma once

#include "qbattery/model.hpp"

namespace qb {

// Symmetric mode matrix [[omega_a', g], [g, omega_b]].
struct CouplingMatrix {
    double m11;
    double m12;
    double m21;
    double m22;
};

struct Eigenfrequencies {
    double lambda_plus;   // larger root
    double lambda_minus;  // smaller root
};

// Normal-mode data of the renormalized two-mode system. The supermode
// operators are C+ = sin_alpha*a + cos_alpha*b and C- = cos_alpha*a -
// sin_alpha*b; (sin_alpha, cos_alpha) and (cos_alpha, -sin_alpha) are exact
// eigenvectors of the coupling matrix for lambda_plus and lambda_minus.
struct SupermodeDecomposition {
    double lambda_plus;
    double lambda_minus;
    double sin_alpha;
    double cos_alpha;
    double drive_plus;   // F * sin_alpha, effective drive on C+
    double drive_minus;  // F * cos_alpha, effective drive on C-
};

enum class Branch { plus, minus };

Branch branch_from_string(const std::string& name);
std::string to_string(Branch branch);

CouplingMatrix coupling_matrix(const SystemParams& params);

// lambda_pm = (m11 + m22)/2 +- sqrt(((m11 - m22)/2)^2 + g^2)
Eigenfrequencies eigenfrequencies(const CouplingMatrix& coupling);

// Requires g > 0; throws validation_error for a decoupled system.
SupermodeDecomposition supermode_decomposition(const SystemParams& params);

// lambda_plus or lambda_minus of the current parameters; the drive frequency
// that resonantly addresses the chosen supermode.
double resonant_drive_frequency(const SystemParams& params, Branch branch);

}  // namespace qb

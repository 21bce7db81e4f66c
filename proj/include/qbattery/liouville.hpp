// liouville.hpp — Lindblad density-matrix oracle on a truncated two-mode Fock space
#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <functional>
#include <vector>

#include "qbattery/model.hpp"

namespace qb {

using DenseOp = Eigen::MatrixXcd;
using SparseOp = Eigen::SparseMatrix<complexd>;

// Truncated product basis |n_a, n_b>, n_a <= cutoff_a, n_b <= cutoff_b.
struct FockBasis {
    int cutoff_a = 1;
    int cutoff_b = 1;

    int dim() const { return (cutoff_a + 1) * (cutoff_b + 1); }
    int flat(int n_a, int n_b) const { return n_a * (cutoff_b + 1) + n_b; }
    int occupation_a(int flat_index) const { return flat_index / (cutoff_b + 1); }
    int occupation_b(int flat_index) const { return flat_index % (cutoff_b + 1); }
};

// Throws validation_error unless both cutoffs are >= 1.
FockBasis make_fock_basis(int cutoff_a, int cutoff_b);

struct LadderOperators {
    SparseOp a;
    SparseOp a_dagger;
    SparseOp b;
    SparseOp b_dagger;
    SparseOp number_a;
    SparseOp number_b;
};

LadderOperators build_operators(const FockBasis& basis);

// H~ = (omega_a' - w_f) a†a + (omega_b - w_f) b†b + g(a b† + b a†) + F(a + a†).
// The Lamb-shift commutator -i Delta_L [a†a, rho] of the lab-frame master
// equation is absorbed here through omega_a'.
DenseOp rotating_frame_hamiltonian(const SystemParams& params, const FockBasis& basis);

struct DensityMatrix {
    FockBasis basis;
    DenseOp elements;
};

DensityMatrix vacuum_state(const FockBasis& basis);

// Hermitian within 1e-12, unit trace within 1e-8, diagonal >= -1e-10.
void check_density_invariants(const DensityMatrix& rho);

// drho/dt = -i[H~, rho] + gamma_a (N+1) D[a](rho) + gamma_a N D[a†](rho)
DenseOp lindblad_rhs(const DensityMatrix& rho, const SystemParams& params,
                     const FockBasis& basis);

complexd expectation(const DensityMatrix& rho, const DenseOp& op);

// Population sitting at either truncation boundary (n_a = cutoff_a or
// n_b = cutoff_b); certifies convergence of the truncation.
double truncation_tail(const DensityMatrix& rho);

struct LiouvilleSample {
    double t;
    DensityMatrix state;  // rotating-frame density matrix
};

// RK4 propagation of the rotating-frame master equation. Samples every
// sample_stride * dt; the final step is always included. Lab-frame moments
// are e^{-i w_f t} Tr(rho~ o). Throws numeric_error if the trace drifts
// beyond 1e-6 or a diagonal entry falls below -1e-8.
std::vector<LiouvilleSample> evolve(const DensityMatrix& rho0, const SystemParams& params,
                                    double t_final, double dt, int sample_stride = 1);

// Streaming form of evolve(); avoids storing the sampled states.
void evolve_observe(const DensityMatrix& rho0, const SystemParams& params,
                    double t_final, double dt, int sample_stride,
                    const std::function<void(double, const DensityMatrix&)>& observer);

}  // namespace qb

// liouville.cpp
#include "qbattery/liouville.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "qbattery/meanfield.hpp"

namespace qb {

namespace {

constexpr complexd kImag{0.0, 1.0};

void require_same_shape(const DensityMatrix& rho, const FockBasis& basis) {
    if (rho.basis.cutoff_a != basis.cutoff_a || rho.basis.cutoff_b != basis.cutoff_b ||
        rho.elements.rows() != basis.dim() || rho.elements.cols() != basis.dim()) {
        throw validation_error("density matrix does not match the Fock basis");
    }
}

SparseOp sparse_from_triplets(int dim, std::vector<Eigen::Triplet<complexd>>& entries) {
    SparseOp op(dim, dim);
    op.setFromTriplets(entries.begin(), entries.end());
    return op;
}

// Sparse rotating-frame Hamiltonian; the dense public variant converts.
SparseOp sparse_hamiltonian(const SystemParams& params, const LadderOperators& ops) {
    const double detuning_a = params.omega_a_prime() - params.drive_frequency;
    const double detuning_b = params.omega_b - params.drive_frequency;
    SparseOp h = detuning_a * ops.number_a + detuning_b * ops.number_b;
    if (params.g != 0.0) {
        h += params.g * SparseOp(ops.a * ops.b_dagger) +
             params.g * SparseOp(ops.b * ops.a_dagger);
    }
    if (params.drive_amplitude != 0.0) {
        h += params.drive_amplitude * ops.a + params.drive_amplitude * ops.a_dagger;
    }
    return h;
}

// Applies the Lindblad generator through the non-Hermitian effective
// Hamiltonian K = H~ - (i/2)(gamma (N+1) a†a + gamma N a a†):
//   L(rho) = -i (K rho - rho K†) + gamma (N+1) a rho a† + gamma N a† rho a
class Propagator {
public:
    Propagator(const SystemParams& params, const FockBasis& basis)
        : ops_(build_operators(basis)),
          rate_down_(params.gamma_a * (params.n_thermal + 1.0)),
          rate_up_(params.gamma_a * params.n_thermal) {
        SparseOp k = sparse_hamiltonian(params, ops_);
        if (rate_down_ != 0.0) {
            k += complexd(0.0, -0.5 * rate_down_) * SparseOp(ops_.a_dagger * ops_.a);
        }
        if (rate_up_ != 0.0) {
            k += complexd(0.0, -0.5 * rate_up_) * SparseOp(ops_.a * ops_.a_dagger);
        }
        k_ = k;
        k_adj_ = SparseOp(k_.adjoint());
        const int dim = basis.dim();
        t1_.resize(dim, dim);
        t2_.resize(dim, dim);
    }

    void apply(const DenseOp& rho, DenseOp& out) {
        t1_.noalias() = k_ * rho;
        t2_.noalias() = rho * k_adj_;
        out = -kImag * (t1_ - t2_);
        if (rate_down_ != 0.0) {
            t1_.noalias() = ops_.a * rho;
            t2_.noalias() = t1_ * ops_.a_dagger;
            out += rate_down_ * t2_;
        }
        if (rate_up_ != 0.0) {
            t1_.noalias() = ops_.a_dagger * rho;
            t2_.noalias() = t1_ * ops_.a;
            out += rate_up_ * t2_;
        }
    }

private:
    LadderOperators ops_;
    double rate_down_;
    double rate_up_;
    SparseOp k_, k_adj_;
    DenseOp t1_, t2_;
};

}  // namespace

FockBasis make_fock_basis(int cutoff_a, int cutoff_b) {
    if (cutoff_a < 1 || cutoff_b < 1) {
        throw validation_error("Fock cutoffs must be >= 1");
    }
    return {cutoff_a, cutoff_b};
}

LadderOperators build_operators(const FockBasis& basis) {
    const int dim = basis.dim();
    std::vector<Eigen::Triplet<complexd>> a_entries, b_entries, na_entries, nb_entries;
    for (int na = 0; na <= basis.cutoff_a; ++na) {
        for (int nb = 0; nb <= basis.cutoff_b; ++nb) {
            const int row = basis.flat(na, nb);
            if (na > 0) {
                a_entries.emplace_back(basis.flat(na - 1, nb), row, std::sqrt(double(na)));
            }
            if (nb > 0) {
                b_entries.emplace_back(basis.flat(na, nb - 1), row, std::sqrt(double(nb)));
            }
            if (na > 0) na_entries.emplace_back(row, row, double(na));
            if (nb > 0) nb_entries.emplace_back(row, row, double(nb));
        }
    }
    LadderOperators ops;
    ops.a = sparse_from_triplets(dim, a_entries);
    ops.b = sparse_from_triplets(dim, b_entries);
    ops.a_dagger = SparseOp(ops.a.adjoint());
    ops.b_dagger = SparseOp(ops.b.adjoint());
    ops.number_a = sparse_from_triplets(dim, na_entries);
    ops.number_b = sparse_from_triplets(dim, nb_entries);
    return ops;
}

DenseOp rotating_frame_hamiltonian(const SystemParams& params, const FockBasis& basis) {
    return DenseOp(sparse_hamiltonian(params, build_operators(basis)));
}

DensityMatrix vacuum_state(const FockBasis& basis) {
    DensityMatrix rho{basis, DenseOp::Zero(basis.dim(), basis.dim())};
    rho.elements(0, 0) = 1.0;
    return rho;
}

void check_density_invariants(const DensityMatrix& rho) {
    const DenseOp& m = rho.elements;
    if (m.rows() != rho.basis.dim() || m.cols() != rho.basis.dim()) {
        throw validation_error("density matrix shape does not match basis dimension");
    }
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw validation_error("density matrix not Hermitian");
    }
    if (std::abs(m.trace() - complexd(1.0)) > 1e-8) {
        throw validation_error("density matrix trace differs from 1");
    }
    if (m.diagonal().real().minCoeff() < -1e-10) {
        throw validation_error("density matrix has a negative population");
    }
}

DenseOp lindblad_rhs(const DensityMatrix& rho, const SystemParams& params,
                     const FockBasis& basis) {
    require_same_shape(rho, basis);
    Propagator propagator(params, basis);
    DenseOp out(basis.dim(), basis.dim());
    propagator.apply(rho.elements, out);
    return out;
}

complexd expectation(const DensityMatrix& rho, const DenseOp& op) {
    if (op.rows() != rho.elements.rows() || op.cols() != rho.elements.cols()) {
        throw validation_error("operator shape does not match density matrix");
    }
    // Tr(rho op) without forming the product
    return rho.elements.cwiseProduct(op.transpose()).sum();
}

double truncation_tail(const DensityMatrix& rho) {
    double tail = 0.0;
    for (int i = 0; i < rho.basis.dim(); ++i) {
        if (rho.basis.occupation_a(i) == rho.basis.cutoff_a ||
            rho.basis.occupation_b(i) == rho.basis.cutoff_b) {
            tail += rho.elements(i, i).real();
        }
    }
    return tail;
}

void evolve_observe(const DensityMatrix& rho0, const SystemParams& params,
                    double t_final, double dt, int sample_stride,
                    const std::function<void(double, const DensityMatrix&)>& observer) {
    validate(params);
    check_density_invariants(rho0);
    if (!(t_final > 0.0) || !std::isfinite(t_final)) {
        throw validation_error("t_final must be positive");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw validation_error("dt must be positive");
    }
    if (sample_stride < 1) {
        throw validation_error("sample_stride must be >= 1");
    }
    const double dt_max = max_admissible_dt(params);
    if (dt > dt_max) {
        throw validation_error("dt too coarse for the fastest mode; maximal admissible dt = " +
                               std::to_string(dt_max));
    }

    const FockBasis& basis = rho0.basis;
    Propagator propagator(params, basis);
    const int dim = basis.dim();
    DensityMatrix current{basis, rho0.elements};
    DenseOp k1(dim, dim), k2(dim, dim), k3(dim, dim), k4(dim, dim), stage(dim, dim);

    const long steps = static_cast<long>(std::floor(t_final / dt + 1e-9));
    for (long k = 0; k <= steps; ++k) {
        if (k % sample_stride == 0 || k == steps) {
            observer(static_cast<double>(k) * dt, current);
        }
        if (k == steps) break;

        propagator.apply(current.elements, k1);
        stage = current.elements + (0.5 * dt) * k1;
        propagator.apply(stage, k2);
        stage = current.elements + (0.5 * dt) * k2;
        propagator.apply(stage, k3);
        stage = current.elements + dt * k3;
        propagator.apply(stage, k4);
        current.elements += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        const double trace_err = std::abs(current.elements.trace() - complexd(1.0));
        const double min_diag = current.elements.diagonal().real().minCoeff();
        if (trace_err > 1e-6 || min_diag < -1e-8) {
            throw numeric_error("truncation/step failure, increase cutoff or decrease dt");
        }
    }
}

std::vector<LiouvilleSample> evolve(const DensityMatrix& rho0, const SystemParams& params,
                                    double t_final, double dt, int sample_stride) {
    std::vector<LiouvilleSample> samples;
    evolve_observe(rho0, params, t_final, dt, sample_stride,
                   [&samples](double t, const DensityMatrix& rho) {
                       samples.push_back({t, rho});
                   });
    return samples;
}

}  // namespace qb

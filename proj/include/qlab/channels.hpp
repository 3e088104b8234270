#pragma once

#include "qlab/ensembles.hpp"
#include "qlab/linalg.hpp"

#include <vector>

namespace qlab {

// Quantum channel rho -> tr_2(V rho V^dagger) from the m x m to the d x d
// matrices, determined by its isometry.
struct PartialTraceChannel {
    Isometry isometry;

    explicit PartialTraceChannel(Isometry iso) : isometry(std::move(iso)) {
        isometry.validate();
    }

    int in_dim() const { return isometry.m; }
    int out_dim() const { return isometry.d; }
    int env_dim() const { return isometry.r; }
};

struct KrausSet {
    std::vector<CMatrix> operators;  // r operators, each d x m
};

DensityMatrix apply(const PartialTraceChannel& channel, const DensityMatrix& rho);

// Raw partial-trace evaluation without density-matrix validation; used where
// the input is an arbitrary matrix.
CMatrix apply_raw(const PartialTraceChannel& channel, const CMatrix& rho);

// K_j = (I_d (x) <j|) V, so that apply(rho) = sum_j K_j rho K_j^dagger.
KrausSet kraus_from_isometry(const PartialTraceChannel& channel);

// Channel of the entrywise-conjugated isometry. Involution; identity on real
// channels.
PartialTraceChannel conjugate_channel(const PartialTraceChannel& channel);

// (1/sqrt(m)) sum_i e_i (x) e_i, tagged with shape (m, m).
PureState maximally_entangled_state(int m);

// (Phi (x) conj(Phi)) applied to the maximally entangled projector, as an
// explicit d^2 x d^2 density matrix. Requires r = d.
DensityMatrix product_channel_on_max_entangled(const PartialTraceChannel& channel);

struct ProductBounds {
    double lambda_max;       // largest eigenvalue of the product output
    double bound_m_over_d2;  // the certified floor m/d^2
    double p_norm_lb;        // p-norm of the product output: lower bound on the max output p-norm
    double entropy_ub;       // S_p of the product output: upper bound on the minimal output entropy
    double overlap_psi_d;    // <psi_d| output |psi_d>, recorded, not asserted
};

ProductBounds certified_product_lower_bounds(const PartialTraceChannel& channel,
                                             double p);

}  // namespace qlab

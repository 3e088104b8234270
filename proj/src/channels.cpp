#include "qlab/channels.hpp"

#include "qlab/entropy.hpp"

#include <algorithm>
#include <cmath>

namespace qlab {

CMatrix apply_raw(const PartialTraceChannel& channel, const CMatrix& rho) {
    const auto& v = channel.isometry.matrix;
    if (rho.rows() != channel.in_dim() || rho.cols() != channel.in_dim()) {
        throw ShapeError("apply: input dimension mismatch");
    }
    const CMatrix lifted = v * rho * v.adjoint();
    return partial_trace_2(lifted, channel.out_dim(), channel.env_dim());
}

DensityMatrix apply(const PartialTraceChannel& channel, const DensityMatrix& rho) {
    return DensityMatrix(apply_raw(channel, rho.matrix));
}

KrausSet kraus_from_isometry(const PartialTraceChannel& channel) {
    const auto& v = channel.isometry.matrix;
    const int d = channel.out_dim();
    const int r = channel.env_dim();
    const int m = channel.in_dim();
    KrausSet set;
    set.operators.reserve(r);
    for (int j = 0; j < r; ++j) {
        CMatrix k(d, m);
        for (int i = 0; i < d; ++i) {
            k.row(i) = v.row(static_cast<long>(i) * r + j);
        }
        set.operators.push_back(std::move(k));
    }
    return set;
}

PartialTraceChannel conjugate_channel(const PartialTraceChannel& channel) {
    Isometry conj = channel.isometry;
    conj.matrix = conj.matrix.conjugate();
    return PartialTraceChannel(std::move(conj));
}

PureState maximally_entangled_state(int m) {
    if (m < 1) {
        throw DimensionError("maximally_entangled_state requires m >= 1");
    }
    CVector amps = CVector::Zero(static_cast<long>(m) * m);
    const double a = 1.0 / std::sqrt(static_cast<double>(m));
    for (int i = 0; i < m; ++i) {
        amps(static_cast<long>(i) * m + i) = Complex(a, 0.0);
    }
    return PureState(std::move(amps), std::make_pair(m, m));
}

namespace {

// Square-root factor of the product output: (K_j (x) conj(K_l)) |psi_m>
// reshapes to K_j K_l^dagger / sqrt(m), so the output is Y Y^dagger with one
// column per Kraus pair.
CMatrix product_output_factor(const PartialTraceChannel& channel) {
    const int d = channel.out_dim();
    if (channel.env_dim() != d) {
        throw ShapeError("product channel requires square out_shape (d, d)");
    }
    const int m = channel.in_dim();
    const KrausSet kraus = kraus_from_isometry(channel);
    const long d2 = static_cast<long>(d) * d;
    CMatrix y(d2, d2);
    long col = 0;
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (int j = 0; j < d; ++j) {
        for (int l = 0; l < d; ++l) {
            const CMatrix prod = kraus.operators[j] * kraus.operators[l].adjoint();
            y.col(col++) = matrix_to_vec(prod) * scale;
        }
    }
    return y;
}

}  // namespace

DensityMatrix product_channel_on_max_entangled(const PartialTraceChannel& channel) {
    const CMatrix y = product_output_factor(channel);
    return DensityMatrix::from_trusted(y * y.adjoint());
}

ProductBounds certified_product_lower_bounds(const PartialTraceChannel& channel,
                                             double p) {
    if (!(p > 1.0)) {
        throw std::invalid_argument("certified_product_lower_bounds requires p > 1");
    }
    const int d = channel.out_dim();
    const int m = channel.in_dim();
    const CMatrix y = product_output_factor(channel);

    // Spectrum of Y Y^dagger through the Gram matrix; one eigensolve,
    // eigenvalues only.
    Eigen::SelfAdjointEigenSolver<CMatrix> es(y.adjoint() * y,
                                              Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition failed");
    }
    RVector lam = es.eigenvalues().cwiseMax(0.0);
    std::reverse(lam.data(), lam.data() + lam.size());
    const double tr = lam.sum();
    lam /= tr;  // trace-one up to rounding already

    ProductBounds b{};
    b.lambda_max = lam(0);
    b.bound_m_over_d2 =
        static_cast<double>(m) / (static_cast<double>(d) * static_cast<double>(d));
    // PSD output: singular values coincide with the eigenvalues already in hand.
    if (std::isinf(p)) {
        b.p_norm_lb = lam(0);
    } else {
        double acc = 0.0;
        for (Eigen::Index j = 0; j < lam.size(); ++j) {
            if (lam(j) > 0.0) acc += std::pow(lam(j), p);
        }
        b.p_norm_lb = std::pow(acc, 1.0 / p);
    }
    b.entropy_ub = entropy_from_p_norm(b.p_norm_lb, p);

    const PureState psi_d = maximally_entangled_state(d);
    b.overlap_psi_d = (y.adjoint() * psi_d.amplitudes).squaredNorm() / tr;
    return b;
}

}  // namespace qlab

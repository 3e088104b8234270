#include "qlab/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace qlab {

namespace {
constexpr double kSingularFloor = 1e-14;
}

bool is_finite(const CMatrix& a) {
    return a.allFinite();
}

PureState::PureState(CVector amps, std::optional<std::pair<int, int>> shape)
    : amplitudes(std::move(amps)), bipartite_shape(shape) {
    if (amplitudes.size() == 0) {
        throw ShapeError("pure state must have positive dimension");
    }
    if (!amplitudes.allFinite()) {
        throw std::invalid_argument("pure state has non-finite amplitudes");
    }
    const double n = amplitudes.norm();
    if (std::abs(n - 1.0) > 1e-12) {
        throw std::invalid_argument("pure state is not normalized");
    }
    if (bipartite_shape) {
        const auto [d, r] = *bipartite_shape;
        if (d <= 0 || r <= 0 || static_cast<long>(d) * r != amplitudes.size()) {
            throw ShapeError("bipartite shape does not match dimension");
        }
    }
}

DensityMatrix::DensityMatrix(const CMatrix& candidate) {
    if (candidate.rows() != candidate.cols() || candidate.rows() == 0) {
        throw ShapeError("density matrix must be square");
    }
    if (!candidate.allFinite()) {
        throw std::invalid_argument("density matrix has non-finite entries");
    }
    const double hs = candidate.norm();
    const double tol = 1e-10 * std::max(1.0, hs);
    const double herm_defect = (candidate - candidate.adjoint()).cwiseAbs().maxCoeff();
    if (herm_defect > tol) {
        throw SymmetryError("density matrix is not Hermitian within tolerance");
    }
    CMatrix sym = 0.5 * (candidate + candidate.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(sym);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition failed");
    }
    RVector lam = es.eigenvalues();
    if (lam.minCoeff() < -1e-10) {
        throw std::invalid_argument("density matrix has a negative eigenvalue");
    }
    lam = lam.cwiseMax(0.0);
    const double tr = lam.sum();
    if (std::abs(tr - 1.0) > 1e-10) {
        throw std::invalid_argument("density matrix trace differs from 1");
    }
    lam /= tr;
    matrix = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

DensityMatrix DensityMatrix::from_trusted(CMatrix psd) {
    if (psd.rows() != psd.cols() || psd.rows() == 0 || !psd.allFinite()) {
        throw ShapeError("trusted density matrix must be square and finite");
    }
    DensityMatrix rho;
    rho.matrix = 0.5 * (psd + psd.adjoint());
    const double tr = rho.matrix.trace().real();
    if (std::abs(tr - 1.0) > 1e-10) {
        throw std::invalid_argument("trusted density matrix trace differs from 1");
    }
    rho.matrix /= tr;
    return rho;
}

RVector singular_values(const CMatrix& a) {
    RVector s;
    if (a.rows() > 32 || a.cols() > 32) {
        Eigen::BDCSVD<CMatrix> svd(a);
        s = svd.singularValues();
    } else {
        Eigen::JacobiSVD<CMatrix> svd(a);
        s = svd.singularValues();
    }
    if (s.size() > 0) {
        const double floor = kSingularFloor * s(0);
        for (Eigen::Index j = 0; j < s.size(); ++j) {
            if (s(j) < floor) s(j) = 0.0;
        }
    }
    return s;
}

double schatten_norm(const CMatrix& a, SchattenOrder p) {
    if (!a.allFinite()) {
        throw std::invalid_argument("schatten_norm: non-finite input");
    }
    const RVector s = singular_values(a);
    if (s.size() == 0) return 0.0;
    if (p.is_inf()) return s(0);
    if (p.value == 2.0) return s.norm();
    if (p.value == 1.0) return s.sum();
    double acc = 0.0;
    for (Eigen::Index j = 0; j < s.size(); ++j) {
        acc += std::pow(s(j), p.value);
    }
    return std::pow(acc, 1.0 / p.value);
}

CMatrix vec_to_matrix(const CVector& x, int d, int r) {
    if (static_cast<long>(d) * r != x.size()) {
        throw ShapeError("vec_to_matrix: d*r does not match vector length");
    }
    CMatrix out(d, r);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < r; ++j) {
            out(i, j) = x(static_cast<long>(i) * r + j);
        }
    }
    return out;
}

CMatrix vec_to_matrix(const PureState& x) {
    if (!x.bipartite_shape) {
        throw ShapeError("vec_to_matrix: pure state has no bipartite shape");
    }
    const auto [d, r] = *x.bipartite_shape;
    return vec_to_matrix(x.amplitudes, d, r);
}

CVector matrix_to_vec(const CMatrix& a) {
    const int d = static_cast<int>(a.rows());
    const int r = static_cast<int>(a.cols());
    CVector out(static_cast<long>(d) * r);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < r; ++j) {
            out(static_cast<long>(i) * r + j) = a(i, j);
        }
    }
    return out;
}

RVector schmidt_coefficients(const PureState& x) {
    return singular_values(vec_to_matrix(x));
}

CMatrix partial_trace_2(const CMatrix& rho, int d, int r) {
    const long n = static_cast<long>(d) * r;
    if (rho.rows() != n || rho.cols() != n) {
        throw ShapeError("partial_trace_2: matrix size is not d*r");
    }
    CMatrix out = CMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        for (int k = 0; k < d; ++k) {
            Complex acc(0, 0);
            for (int j = 0; j < r; ++j) {
                acc += rho(static_cast<long>(i) * r + j, static_cast<long>(k) * r + j);
            }
            out(i, k) = acc;
        }
    }
    return out;
}

RVector hermitian_eigenvalues(const CMatrix& a) {
    if (a.rows() != a.cols()) {
        throw ShapeError("hermitian_eigenvalues: matrix must be square");
    }
    const double tol = 1e-8 * std::max(1.0, a.norm());
    if ((a - a.adjoint()).cwiseAbs().maxCoeff() > tol) {
        throw SymmetryError("hermitian_eigenvalues: input not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (a + a.adjoint()));
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition failed");
    }
    RVector lam = es.eigenvalues();
    std::reverse(lam.data(), lam.data() + lam.size());
    return lam;
}

CMatrix tensor_product(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace qlab

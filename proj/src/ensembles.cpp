#include "qlab/ensembles.hpp"

#include <Eigen/QR>
#include <cmath>

namespace qlab {

void Isometry::validate() const {
    if (m <= 0 || d <= 0 || r <= 0) {
        throw DimensionError("isometry dimensions must be positive");
    }
    if (m > d * r) {
        throw DimensionError("isometry requires m <= d*r");
    }
    if (matrix.rows() != static_cast<long>(d) * r || matrix.cols() != m) {
        throw ShapeError("isometry matrix has wrong shape");
    }
    const CMatrix gram = matrix.adjoint() * matrix;
    const double defect =
        (gram - CMatrix::Identity(m, m)).cwiseAbs().maxCoeff();
    if (defect > 1e-10) {
        throw std::invalid_argument("isometry columns are not orthonormal");
    }
    if (field == FieldTag::Real && matrix.imag().cwiseAbs().maxCoeff() != 0.0) {
        throw std::invalid_argument("real isometry has nonzero imaginary part");
    }
}

CMatrix complex_gaussian_matrix(int rows, int cols, RngStream& rng) {
    if (rows < 1 || cols < 1) {
        throw DimensionError("gaussian matrix needs positive dimensions");
    }
    const double scale = std::sqrt(0.5);
    CMatrix out(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            const double re = rng.normal();
            const double im = rng.normal();
            out(i, j) = Complex(scale * re, scale * im);
        }
    }
    return out;
}

CMatrix real_gaussian_matrix(int rows, int cols, RngStream& rng) {
    if (rows < 1 || cols < 1) {
        throw DimensionError("gaussian matrix needs positive dimensions");
    }
    CMatrix out(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            out(i, j) = Complex(rng.normal(), 0.0);
        }
    }
    return out;
}

Isometry haar_isometry(int m, int d, int r, FieldTag field, RngStream& rng) {
    const long n = static_cast<long>(d) * r;
    if (m < 1 || m > n) {
        throw DimensionError("haar_isometry requires 1 <= m <= d*r");
    }
    CMatrix g = (field == FieldTag::Complex)
                    ? complex_gaussian_matrix(static_cast<int>(n), m, rng)
                    : real_gaussian_matrix(static_cast<int>(n), m, rng);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ() * CMatrix::Identity(n, m);
    const CMatrix rfac = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
    // Without the phase fix the QR output is not Haar distributed.
    for (int j = 0; j < m; ++j) {
        const Complex diag = rfac(j, j);
        const double mag = std::abs(diag);
        if (mag > 0) {
            q.col(j) *= diag / mag;
        }
    }
    if (field == FieldTag::Real) {
        q = q.real().cast<Complex>();
    }
    Isometry iso{m, d, r, field, std::move(q)};
    iso.validate();
    return iso;
}

CMatrix hs_sphere_point(int d, RngStream& rng) {
    if (d < 1) {
        throw DimensionError("hs_sphere_point requires d >= 1");
    }
    CMatrix g = complex_gaussian_matrix(d, d, rng);
    return g / g.norm();
}

Isometry random_subspace_basis(int m, int d, RngStream& rng) {
    if (m < 1 || m > d * d) {
        throw DimensionError("random_subspace_basis requires 1 <= m <= d^2");
    }
    return haar_isometry(m, d, d, FieldTag::Complex, rng);
}

}  // namespace qlab

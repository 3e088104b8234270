#pragma once

#include <Eigen/Dense>
#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qlab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

constexpr double kInfOrder = std::numeric_limits<double>::infinity();

// Schatten order p in [1, inf]; inf means operator norm.
struct SchattenOrder {
    double value;

    explicit SchattenOrder(double p) : value(p) {
        if (!(p >= 1.0)) {
            throw std::invalid_argument("Schatten order must satisfy p >= 1");
        }
    }
    bool is_inf() const { return std::isinf(value); }
};

struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SymmetryError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Unit vector, optionally carrying a bipartite factorization (d, r) with d*r = dim.
struct PureState {
    CVector amplitudes;
    std::optional<std::pair<int, int>> bipartite_shape;

    PureState(CVector amps, std::optional<std::pair<int, int>> shape = std::nullopt);

    int dim() const { return static_cast<int>(amplitudes.size()); }
};

// Hermitian, PSD, trace-one. Construction clips slightly negative eigenvalues
// and renormalizes the trace; inputs outside tolerance throw.
struct DensityMatrix {
    CMatrix matrix;

    explicit DensityMatrix(const CMatrix& candidate);

    // Fast path for matrices that are PSD by construction (e.g. Gram forms
    // Y Y^dagger): hermitizes and fixes the trace without an eigensolve.
    static DensityMatrix from_trusted(CMatrix psd);

    int dim() const { return static_cast<int>(matrix.rows()); }

private:
    DensityMatrix() = default;
};

bool is_finite(const CMatrix& a);

// Singular values, nonincreasing. Values below 1e-14 * s_max are snapped to 0.
RVector singular_values(const CMatrix& a);

// (sum_j s_j^p)^(1/p); p = inf gives the largest singular value.
double schatten_norm(const CMatrix& a, SchattenOrder p);

// Row-major reshape of a length d*r vector into a d x r matrix.
CMatrix vec_to_matrix(const CVector& x, int d, int r);
CMatrix vec_to_matrix(const PureState& x);

// Inverse of vec_to_matrix.
CVector matrix_to_vec(const CMatrix& a);

// Singular values of the (d, r) reshape; squares sum to 1 for unit states.
RVector schmidt_coefficients(const PureState& x);

// Contraction of the second tensor factor: out(i,k) = sum_j rho(i*r+j, k*r+j).
CMatrix partial_trace_2(const CMatrix& rho, int d, int r);

// Real spectrum of a Hermitian matrix, nonincreasing. Throws if the input is
// not Hermitian within 1e-8 (scaled by the HS norm).
RVector hermitian_eigenvalues(const CMatrix& a);

// Kronecker product matching the row-major reshape convention.
CMatrix tensor_product(const CMatrix& a, const CMatrix& b);

}  // namespace qlab

#pragma once

#include "qlab/linalg.hpp"
#include "qlab/rng.hpp"

namespace qlab {

enum class FieldTag { Complex, Real };

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// (d*r) x m matrix with orthonormal columns; defines a partial-trace channel
// and an m-dimensional subspace of the d x r matrices.
struct Isometry {
    int m = 0;
    int d = 0;
    int r = 0;
    FieldTag field = FieldTag::Complex;
    CMatrix matrix;  // (d*r) x m

    void validate() const;
};

// i.i.d. entries with independent N(0, 1/2) real and imaginary parts.
CMatrix complex_gaussian_matrix(int rows, int cols, RngStream& rng);

// i.i.d. real N(0, 1) entries (zero imaginary parts).
CMatrix real_gaussian_matrix(int rows, int cols, RngStream& rng);

// Haar isometry C^m -> C^(d*r) via QR of a Gaussian matrix, with the
// triangular factor's diagonal phases divided out. field = Real draws the
// orthogonal ensemble instead.
Isometry haar_isometry(int m, int d, int r, FieldTag field, RngStream& rng);

// Uniform point on the Hilbert-Schmidt unit sphere of the d x d matrices.
CMatrix hs_sphere_point(int d, RngStream& rng);

// Orthonormal basis of a Haar-random m-dimensional subspace of the d x d
// matrices, as an isometry with out_shape (d, d).
Isometry random_subspace_basis(int m, int d, RngStream& rng);

}  // namespace qlab

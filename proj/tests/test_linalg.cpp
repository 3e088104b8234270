#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "qlab/linalg.hpp"
#include "qlab/rng.hpp"

#include <cmath>

using namespace qlab;

TEST_CASE("schatten norm of the maximally mixed state") {
    for (int d : {2, 4, 16}) {
        const CMatrix mixed = CMatrix::Identity(d, d) / double(d);
        for (double p : {1.5, 2.0, 3.0}) {
            CHECK(schatten_norm(mixed, SchattenOrder(p)) ==
                  doctest::Approx(std::pow(d, 1.0 / p - 1.0)).epsilon(1e-12));
        }
        CHECK(schatten_norm(mixed, SchattenOrder(kInfOrder)) ==
              doctest::Approx(1.0 / d).epsilon(1e-12));
    }
}

TEST_CASE("schatten norm of diag(3, 4) at p = 2 is 5") {
    CMatrix a = CMatrix::Zero(2, 2);
    a(0, 0) = 3.0;
    a(1, 1) = 4.0;
    CHECK(schatten_norm(a, SchattenOrder(2.0)) == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("schatten norm matches the characteristic-polynomial oracle") {
    RngStream rng(11, 0);
    for (int rep = 0; rep < 10; ++rep) {
        const CMatrix a = oracles::random_complex(3, 3, rng);
        const auto s = oracles::singular_values_by_charpoly(a);
        double expected = 0.0;
        for (double v : s) expected += v * v * v * v;
        expected = std::pow(expected, 0.25);
        CHECK(schatten_norm(a, SchattenOrder(4.0)) ==
              doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("schatten order below 1 is rejected") {
    CHECK_THROWS_AS(SchattenOrder(0.5), std::invalid_argument);
}

TEST_CASE("vec_to_matrix places basis products") {
    CVector x = CVector::Zero(4);
    x(1) = 1.0;  // e1 (x) e2 in C^2 (x) C^2
    PureState st(x, std::make_pair(2, 2));
    const CMatrix a = vec_to_matrix(st);
    CHECK(std::abs(a(0, 1) - Complex(1, 0)) < 1e-15);
    CHECK(a.norm() == doctest::Approx(1.0));
}

TEST_CASE("maximally entangled state reshapes to scaled identity") {
    CVector x = CVector::Zero(4);
    x(0) = x(3) = 1.0 / std::sqrt(2.0);
    const CMatrix a = vec_to_matrix(PureState(x, std::make_pair(2, 2)));
    CHECK((a - CMatrix::Identity(2, 2) / std::sqrt(2.0)).norm() < 1e-14);
}

TEST_CASE("product vectors reshape to outer products") {
    RngStream rng(12, 0);
    const CVector u = oracles::random_unit(3, rng);
    const CVector v = oracles::random_unit(4, rng);
    CVector x(12);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 4; ++j) {
            x(i * 4 + j) = u(i) * v(j);
        }
    }
    const CMatrix a = vec_to_matrix(PureState(x, std::make_pair(3, 4)));
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 4; ++j) {
            CHECK(std::abs(a(i, j) - u(i) * v(j)) < 1e-14);
        }
    }
}

TEST_CASE("vec_to_matrix requires a bipartite shape") {
    RngStream rng(13, 0);
    PureState st(oracles::random_unit(4, rng));
    CHECK_THROWS_AS(vec_to_matrix(st), ShapeError);
}

TEST_CASE("schmidt coefficients of product and entangled states") {
    RngStream rng(14, 0);
    const CVector u = oracles::random_unit(3, rng);
    const CVector v = oracles::random_unit(3, rng);
    CVector x(9);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) x(i * 3 + j) = u(i) * v(j);
    }
    const RVector s = schmidt_coefficients(PureState(x, std::make_pair(3, 3)));
    CHECK(s(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s(1) < 1e-10);

    CVector psi = CVector::Zero(9);
    for (int i = 0; i < 3; ++i) psi(i * 3 + i) = 1.0 / std::sqrt(3.0);
    const RVector se = schmidt_coefficients(PureState(psi, std::make_pair(3, 3)));
    for (int j = 0; j < 3; ++j) {
        CHECK(se(j) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
    }
}

TEST_CASE("schmidt coefficients match the charpoly oracle and sum to one") {
    RngStream rng(15, 0);
    for (int rep = 0; rep < 10; ++rep) {
        const CVector x = oracles::random_unit(9, rng);
        PureState st(x, std::make_pair(3, 3));
        const RVector s = schmidt_coefficients(st);
        const auto expected = oracles::singular_values_by_charpoly(vec_to_matrix(st));
        double sumsq = 0.0;
        for (int j = 0; j < 3; ++j) {
            CHECK(s(j) == doctest::Approx(expected[j]).epsilon(1e-8));
            sumsq += s(j) * s(j);
        }
        CHECK(sumsq == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("partial trace of a product state returns the first factor") {
    RngStream rng(16, 0);
    const CMatrix rho1 = oracles::random_psd_trace_one(3, rng);
    const CMatrix rho2 = oracles::random_psd_trace_one(2, rng);
    const CMatrix joint = tensor_product(rho1, rho2);
    CHECK((partial_trace_2(joint, 3, 2) - rho1).norm() < 1e-12);
}

TEST_CASE("partial trace matches the hand-indexed loop and preserves trace") {
    RngStream rng(17, 0);
    const CMatrix rho = oracles::random_psd_trace_one(4, rng);
    const CMatrix a = partial_trace_2(rho, 2, 2);
    CHECK((a - oracles::partial_trace_2_loop(rho, 2, 2)).norm() < 1e-13);
    CHECK(a.trace().real() == doctest::Approx(rho.trace().real()).epsilon(1e-12));
    CHECK_THROWS_AS(partial_trace_2(rho, 3, 2), ShapeError);
}

TEST_CASE("partial trace is invariant under a unitary on the second factor") {
    RngStream rng(18, 0);
    const CMatrix rho = oracles::random_psd_trace_one(6, rng);
    // Unitary from the polar phase of a random matrix, built without QR.
    CMatrix g = oracles::random_complex(2, 2, rng);
    Eigen::JacobiSVD<CMatrix> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const CMatrix u = svd.matrixU() * svd.matrixV().adjoint();
    const CMatrix big = tensor_product(CMatrix::Identity(3, 3), u);
    CHECK((partial_trace_2(big * rho * big.adjoint(), 3, 2) -
           partial_trace_2(rho, 3, 2))
              .norm() < 1e-12);
}

TEST_CASE("hermitian eigenvalues: diagonal cases and charpoly oracle") {
    CHECK((hermitian_eigenvalues(CMatrix::Identity(3, 3)) -
           RVector::Ones(3)).norm() < 1e-14);

    CMatrix diag = CMatrix::Zero(2, 2);
    diag(0, 0) = 0.7;
    diag(1, 1) = 0.3;
    const RVector lam = hermitian_eigenvalues(diag);
    CHECK(lam(0) == doctest::Approx(0.7));
    CHECK(lam(1) == doctest::Approx(0.3));

    RngStream rng(19, 0);
    const CMatrix g = oracles::random_complex(4, 4, rng);
    const CMatrix h = g + g.adjoint();
    const RVector mine = hermitian_eigenvalues(h);
    const auto expected = oracles::hermitian_eigs_by_charpoly(h);
    for (int j = 0; j < 4; ++j) {
        CHECK(mine(j) == doctest::Approx(expected[j]).epsilon(1e-8));
    }
    CHECK(mine.sum() == doctest::Approx(h.trace().real()).epsilon(1e-10));

    CHECK_THROWS_AS(hermitian_eigenvalues(g), SymmetryError);
}

TEST_CASE("tensor product: identities and the mixed-product identity") {
    CHECK((tensor_product(CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)) -
           CMatrix::Identity(6, 6)).norm() < 1e-15);

    RngStream rng(20, 0);
    const CMatrix a = oracles::random_complex(2, 2, rng);
    const CMatrix b = oracles::random_complex(2, 2, rng);
    const CMatrix c = oracles::random_complex(2, 2, rng);
    const CMatrix d = oracles::random_complex(2, 2, rng);
    CHECK((tensor_product(a, b) * tensor_product(c, d) -
           tensor_product(a * c, b * d)).norm() < 1e-12);
}

TEST_CASE("schatten norms are nonincreasing in p and obey the q-sandwich") {
    RngStream rng(21, 0);
    for (int rep = 0; rep < 20; ++rep) {
        const int d = 2 + static_cast<int>(rng.next_u64() % 7);
        const CMatrix a = oracles::random_complex(d, d, rng);
        const double hs = schatten_norm(a, SchattenOrder(2.0));
        double prev = schatten_norm(a, SchattenOrder(1.0));
        for (double p : {1.5, 2.0, 3.0, 7.0, kInfOrder}) {
            const double cur = schatten_norm(a, SchattenOrder(p));
            CHECK(cur <= prev * (1 + 1e-12));
            prev = cur;
        }
        for (double q : {2.5, 4.0, 10.0}) {
            const double nq = schatten_norm(a, SchattenOrder(q));
            CHECK(nq >= std::pow(d, 1.0 / q - 0.5) * hs * (1 - 1e-10));
            CHECK(nq <= hs * (1 + 1e-10));
            // pointwise interpolation against the operator norm
            const double op = schatten_norm(a, SchattenOrder(kInfOrder));
            CHECK(nq <= std::pow(hs, 2.0 / q) * std::pow(op, 1.0 - 2.0 / q) *
                            (1 + 1e-10));
        }
    }
}

TEST_CASE("density matrix construction clips and validates") {
    RngStream rng(22, 0);
    const CMatrix ok = oracles::random_psd_trace_one(3, rng);
    DensityMatrix rho(ok);
    CHECK((rho.matrix - ok).norm() < 1e-10);

    CMatrix bad = ok;
    bad(0, 1) += Complex(0.1, 0.0);
    CHECK_THROWS_AS(DensityMatrix{bad}, SymmetryError);

    CMatrix neg = CMatrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix{neg}, std::invalid_argument);
}

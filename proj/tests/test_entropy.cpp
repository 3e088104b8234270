#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "qlab/entropy.hpp"
#include "qlab/linalg.hpp"

#include <cmath>

using namespace qlab;

namespace {

DensityMatrix pure_projector(int d) {
    CMatrix p = CMatrix::Zero(d, d);
    p(0, 0) = 1.0;
    return DensityMatrix(p);
}

}  // namespace

TEST_CASE("pure states have zero entropy at every order") {
    const DensityMatrix rho = pure_projector(4);
    for (double p : {1.0, 1.5, 2.0, 5.0}) {
        CHECK(renyi_entropy(rho, p) == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("maximally mixed state has entropy log d") {
    for (int d : {2, 3, 8}) {
        const DensityMatrix rho(CMatrix::Identity(d, d) / double(d));
        for (double p : {1.0, 2.0, 3.0}) {
            CHECK(renyi_entropy(rho, p) ==
                  doctest::Approx(std::log(double(d))).epsilon(1e-12));
        }
    }
}

TEST_CASE("continuity at p = 1") {
    CMatrix diag = CMatrix::Zero(2, 2);
    diag(0, 0) = 0.7;
    diag(1, 1) = 0.3;
    const DensityMatrix rho(diag);
    CHECK(std::abs(renyi_entropy(rho, 1.0001) - renyi_entropy(rho, 1.0)) < 1e-3);
    CHECK_THROWS_AS(renyi_entropy(rho, 0.5), std::invalid_argument);
}

TEST_CASE("entropy recovered from the p-norm") {
    CHECK(entropy_from_p_norm(std::pow(5.0, 1.0 / 3.0 - 1.0), 3.0) ==
          doctest::Approx(std::log(5.0)).epsilon(1e-12));
    CHECK(entropy_from_p_norm(1.0, 2.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(entropy_from_p_norm(0.0, 2.0), std::domain_error);

    RngStream rng(201, 0);
    for (int rep = 0; rep < 10; ++rep) {
        const DensityMatrix rho(oracles::random_psd_trace_one(4, rng));
        const double norm3 = schatten_norm(rho.matrix, SchattenOrder(3.0));
        CHECK(entropy_from_p_norm(norm3, 3.0) ==
              doctest::Approx(renyi_entropy(rho, 3.0)).epsilon(1e-10));
    }
}

TEST_CASE("monotone in p, unitarily invariant, additive on products") {
    RngStream rng(202, 0);
    const DensityMatrix rho(oracles::random_psd_trace_one(3, rng));
    const DensityMatrix sigma(oracles::random_psd_trace_one(2, rng));

    double prev = renyi_entropy(rho, 1.0);
    for (double p : {1.5, 2.0, 4.0, 10.0}) {
        const double cur = renyi_entropy(rho, p);
        CHECK(cur <= prev + 1e-12);
        prev = cur;
    }

    const CMatrix g = oracles::random_complex(3, 3, rng);
    Eigen::JacobiSVD<CMatrix> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const CMatrix u = svd.matrixU() * svd.matrixV().adjoint();
    const DensityMatrix rotated(u * rho.matrix * u.adjoint());
    CHECK(renyi_entropy(rotated, 2.0) ==
          doctest::Approx(renyi_entropy(rho, 2.0)).epsilon(1e-10));

    const DensityMatrix prod(tensor_product(rho.matrix, sigma.matrix));
    for (double p : {1.0, 2.0, 3.0}) {
        CHECK(renyi_entropy(prod, p) ==
              doctest::Approx(renyi_entropy(rho, p) + renyi_entropy(sigma, p))
                  .epsilon(1e-10));
    }
}

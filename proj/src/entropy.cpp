#include "qlab/entropy.hpp"

#include <cmath>

namespace qlab {

double renyi_entropy(const DensityMatrix& rho, double p) {
    if (!(p >= 1.0)) {
        throw std::invalid_argument("renyi_entropy requires p >= 1");
    }
    const RVector lam = hermitian_eigenvalues(rho.matrix);
    if (p == 1.0) {
        double s = 0.0;
        for (Eigen::Index j = 0; j < lam.size(); ++j) {
            if (lam(j) > 1e-14) {
                s -= lam(j) * std::log(lam(j));
            }
        }
        return std::max(0.0, s);
    }
    double acc = 0.0;
    for (Eigen::Index j = 0; j < lam.size(); ++j) {
        if (lam(j) > 0.0) {
            acc += std::pow(lam(j), p);
        }
    }
    return std::max(0.0, std::log(acc) / (1.0 - p));
}

double entropy_from_p_norm(double norm_p, double p) {
    if (!(norm_p > 0.0)) {
        throw std::domain_error("entropy_from_p_norm requires a positive norm");
    }
    if (!(p > 1.0)) {
        throw std::invalid_argument("entropy_from_p_norm requires p > 1");
    }
    if (std::isinf(p)) {
        return -std::log(norm_p);
    }
    return p / (1.0 - p) * std::log(norm_p);
}

}  // namespace qlab

#pragma once

#include "qlab/linalg.hpp"

namespace qlab {

// Renyi entropy S_p(rho) in nats; p = 1 is the von Neumann entropy.
double renyi_entropy(const DensityMatrix& rho, double p);

// S_p recovered from the Schatten p-norm of the state, p > 1.
double entropy_from_p_norm(double norm_p, double p);

}  // namespace qlab

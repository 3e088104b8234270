#pragma once

#include "qlab/optimize.hpp"
#include "qlab/rng.hpp"

#include <vector>

namespace qlab {

// Monte Carlo estimate of M = E ||X||_q over the Hilbert-Schmidt sphere,
// together with the operator-norm mean used by the Holder chain.
struct NormStats {
    double q = 2.0;
    int d = 0;
    int samples = 0;
    double M_hat = 0.0;
    double M_stderr = 0.0;
    double opnorm_mean_hat = 0.0;
    double opnorm_stderr = 0.0;
    double b = 1.0;  // ||.||_q <= ||.||_2 on matrices, so b = 1
};

struct DvoretzkyWindow {
    int d = 0;
    double q = 2.0;
    int m = 0;
    int trials = 0;
    std::vector<NormWindow> per_trial;
    double epsilon_effective = 0.0;
};

struct ShrinkingPoint {
    int m = 0;
    double worst_max_ratio = 0.0;
    double empirical_C = 0.0;  // worst_max_ratio / sqrt(m / d^2)
};

NormStats estimate_M(int d, double q, int samples, const RngStream& rng,
                     int threads = 0);

// Subspace dimension round(c_eff * eps^2 * (M/b)^2 * d^2) from the stats.
int dvoretzky_dimension(int d, double q, const NormStats& stats, double epsilon,
                        double c_eff = 1.0);

DvoretzkyWindow window_experiment(int d, double q, int m, int trials,
                                  const AscentConfig& cfg, const NormStats& stats,
                                  const RngStream& rng);

std::vector<ShrinkingPoint> shrinking_experiment(int d, double q,
                                                 const std::vector<int>& m_list,
                                                 int trials,
                                                 const AscentConfig& cfg,
                                                 const RngStream& rng);

}  // namespace qlab

#pragma once

#include "qlab/channels.hpp"
#include "qlab/ensembles.hpp"
#include "qlab/linalg.hpp"
#include "qlab/rng.hpp"

#include <vector>

namespace qlab {

struct AscentConfig {
    int restarts = 20;
    int max_iters = 500;
    double grad_tol = 1e-8;
    double armijo_c = 1e-4;
    double armijo_shrink = 0.5;
    double init_step = 1.0;
    int sample_baseline = 2000;
    int threads = 0;  // 0 = auto

    void validate() const;
};

struct MaxNormEstimate {
    double best_value = 0.0;       // estimated max output p-norm (a lower bound)
    CVector best_input;            // unit vector in C^m, phase-canonicalized
    std::vector<double> per_restart_values;
    std::vector<int> iterations_used;
    double baseline_max = 0.0;
};

// Output p-norm of the channel at the pure input |x><x|, via the Schmidt
// coefficients of Vx.
double output_p_norm_at(const PartialTraceChannel& channel, const PureState& x,
                        double p);

// Euclidean gradient of c -> ||vec_to_matrix(Wc)||_q for q > 2, pulled back
// through the SVD of the reshaped point.
CVector ratio_gradient(const Isometry& w, const CVector& c, double q);

// Multi-restart projected gradient ascent plus a random-sampling baseline.
// best_value is always a valid lower bound on the true maximum.
MaxNormEstimate estimate_max_output_norm(const PartialTraceChannel& channel,
                                         double p, const AscentConfig& cfg,
                                         const RngStream& rng);

struct NormWindow {
    double max_ratio = 0.0;  // empirical lower bound on max ||x||_q / ||x||_2
    double min_ratio = 0.0;  // empirical upper bound on min ||x||_q / ||x||_2
};

// Two-sided empirical bounds on the Schatten-q-to-HS ratio over the subspace
// spanned by the reshaped columns of w.
NormWindow subspace_norm_window(const Isometry& w, double q,
                                const AscentConfig& cfg, const RngStream& rng);

// Single ascent (or descent) of ||vec_to_matrix(Wc)||_q on the unit sphere
// from a given start; exposed for tests.
struct SphereRunResult {
    double value = 0.0;  // ||mat(Wc)||_q at the final point
    CVector point;
    int iterations = 0;
    bool monotone = true;
};

SphereRunResult sphere_extremize(const Isometry& w, double q, bool maximize,
                                 const AscentConfig& cfg, const CVector& start);

}  // namespace qlab

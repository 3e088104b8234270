#include "qlab/optimize.hpp"

#include "qlab/parallel.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace qlab {

namespace {

constexpr std::uint64_t kRestartTag = 0x5e7a11;
constexpr std::uint64_t kBaselineTag = 0xba5e11;

double lq_norm(const RVector& s, double q) {
    if (s.size() == 0) return 0.0;
    if (std::isinf(q)) return s.maxCoeff();
    double acc = 0.0;
    for (Eigen::Index j = 0; j < s.size(); ++j) {
        acc += std::pow(s(j), q);
    }
    return std::pow(acc, 1.0 / q);
}

double ratio_at(const Isometry& w, const CVector& c, double q) {
    const CMatrix a = vec_to_matrix(w.matrix * c, w.d, w.r);
    return lq_norm(singular_values(a), q);
}

CVector random_unit_vector(int m, RngStream& rng) {
    CVector c(m);
    for (int i = 0; i < m; ++i) {
        c(i) = Complex(rng.normal(), rng.normal());
    }
    const double n = c.norm();
    return c / n;
}

void canonicalize_phase(CVector& c) {
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        const double mag = std::abs(c(i));
        if (mag > 1e-14) {
            c *= std::conj(c(i)) / mag;
            return;
        }
    }
}

// Ascent/descent direction at c; for q = inf uses the top singular pair.
CVector gradient_impl(const Isometry& w, const CVector& c, double q) {
    const CMatrix a = vec_to_matrix(w.matrix * c, w.d, w.r);
    Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVector s = svd.singularValues();
    CMatrix g;
    if (std::isinf(q)) {
        g = svd.matrixU().col(0) * svd.matrixV().col(0).adjoint();
    } else {
        const double norm_q = lq_norm(s, q);
        if (norm_q == 0.0) {
            return CVector::Zero(c.size());
        }
        const double floor = 1e-14 * s.maxCoeff();
        RVector weights(s.size());
        for (Eigen::Index j = 0; j < s.size(); ++j) {
            weights(j) = s(j) < floor ? 0.0 : std::pow(s(j) / norm_q, q - 1.0);
        }
        g = svd.matrixU() * weights.asDiagonal() * svd.matrixV().adjoint();
    }
    return w.matrix.adjoint() * matrix_to_vec(g);
}

}  // namespace

void AscentConfig::validate() const {
    if (restarts < 1 || max_iters < 1 || !(grad_tol > 0) || !(init_step > 0) ||
        !(armijo_c > 0 && armijo_c < 1) ||
        !(armijo_shrink > 0 && armijo_shrink < 1) || sample_baseline < 0) {
        throw std::invalid_argument("invalid ascent configuration");
    }
}

double output_p_norm_at(const PartialTraceChannel& channel, const PureState& x,
                        double p) {
    if (!(p > 1.0)) {
        throw std::invalid_argument("output_p_norm_at requires p > 1");
    }
    if (x.dim() != channel.in_dim()) {
        throw ShapeError("output_p_norm_at: input dimension mismatch");
    }
    const CVector lifted = channel.isometry.matrix * x.amplitudes;
    const RVector s = singular_values(
        vec_to_matrix(lifted, channel.out_dim(), channel.env_dim()));
    if (std::isinf(p)) {
        return s.maxCoeff() * s.maxCoeff();
    }
    double acc = 0.0;
    for (Eigen::Index j = 0; j < s.size(); ++j) {
        acc += std::pow(s(j), 2.0 * p);
    }
    return std::pow(acc, 1.0 / p);
}

CVector ratio_gradient(const Isometry& w, const CVector& c, double q) {
    if (!(q > 2.0)) {
        throw std::invalid_argument("ratio_gradient requires q > 2");
    }
    if (std::isinf(q)) {
        throw std::invalid_argument("ratio_gradient requires finite q");
    }
    return gradient_impl(w, c, q);
}

SphereRunResult sphere_extremize(const Isometry& w, double q, bool maximize,
                                 const AscentConfig& cfg, const CVector& start) {
    if (!(q > 2.0)) {
        throw std::invalid_argument("sphere_extremize requires q > 2");
    }
    cfg.validate();
    SphereRunResult res;
    CVector c = start.normalized();
    double fval = ratio_at(w, c, q);

    if (std::isinf(q) && maximize) {
        // Alternating update through the top singular pair; each step can only
        // increase the top singular value.
        for (int it = 0; it < cfg.max_iters; ++it) {
            const CVector dir = gradient_impl(w, c, q);
            const double n = dir.norm();
            if (n <= cfg.grad_tol) break;
            const CVector cand = dir / n;
            const double fcand = ratio_at(w, cand, q);
            ++res.iterations;
            if (fcand < fval - 1e-13) {
                res.monotone = false;
            }
            const bool converged = fcand - fval <= 1e-12 * std::max(1.0, fval);
            c = cand;
            fval = std::max(fval, fcand);
            if (converged) break;
        }
    } else {
        const double sign = maximize ? 1.0 : -1.0;
        for (int it = 0; it < cfg.max_iters; ++it) {
            const CVector g = gradient_impl(w, c, q);
            CVector gt = g - (c.adjoint() * g)(0, 0) * c;
            const double gn = gt.norm();
            if (gn <= cfg.grad_tol) break;
            double step = cfg.init_step;
            bool accepted = false;
            while (step > 1e-16) {
                const CVector cand = (c + sign * step * gt).normalized();
                const double fcand = ratio_at(w, cand, q);
                if (sign * (fcand - fval) >= cfg.armijo_c * step * gn * gn) {
                    if (sign * (fcand - fval) < 0) res.monotone = false;
                    c = cand;
                    fval = fcand;
                    accepted = true;
                    break;
                }
                step *= cfg.armijo_shrink;
            }
            ++res.iterations;
            if (!accepted) break;
        }
    }
    res.value = fval;
    res.point = c;
    return res;
}

MaxNormEstimate estimate_max_output_norm(const PartialTraceChannel& channel,
                                         double p, const AscentConfig& cfg,
                                         const RngStream& rng) {
    if (!(p > 1.0)) {
        throw std::invalid_argument("estimate_max_output_norm requires p > 1");
    }
    cfg.validate();
    const double q = std::isinf(p) ? kInfOrder : 2.0 * p;
    const Isometry& w = channel.isometry;
    const int m = channel.in_dim();

    MaxNormEstimate est;
    est.per_restart_values.assign(cfg.restarts, 0.0);
    est.iterations_used.assign(cfg.restarts, 0);
    std::vector<CVector> restart_points(cfg.restarts);

    parallel_for(cfg.restarts, cfg.threads, [&](std::size_t i) {
        RngStream local = derive_stream(rng, kRestartTag, i);
        const CVector start = random_unit_vector(m, local);
        SphereRunResult run = sphere_extremize(w, q, true, cfg, start);
        est.per_restart_values[i] = run.value * run.value;
        est.iterations_used[i] = run.iterations;
        restart_points[i] = std::move(run.point);
    });

    int best_restart = 0;
    for (int i = 1; i < cfg.restarts; ++i) {
        if (est.per_restart_values[i] > est.per_restart_values[best_restart]) {
            best_restart = i;
        }
    }
    est.best_value = est.per_restart_values[best_restart];
    est.best_input = restart_points[best_restart];

    RngStream baseline_rng = derive_stream(rng, kBaselineTag, 0);
    est.baseline_max = 0.0;
    for (int j = 0; j < cfg.sample_baseline; ++j) {
        const CVector c = random_unit_vector(m, baseline_rng);
        const double ratio = ratio_at(w, c, q);
        const double value = ratio * ratio;
        if (value > est.baseline_max) {
            est.baseline_max = value;
            if (value > est.best_value) {
                est.best_input = c;
            }
        }
    }
    est.best_value = std::max(est.best_value, est.baseline_max);
    canonicalize_phase(est.best_input);
    return est;
}

NormWindow subspace_norm_window(const Isometry& w, double q,
                                const AscentConfig& cfg, const RngStream& rng) {
    if (!(q > 2.0)) {
        throw std::invalid_argument("subspace_norm_window requires q > 2");
    }
    cfg.validate();
    const int m = w.m;

    std::vector<double> maxima(cfg.restarts, 0.0);
    std::vector<double> minima(cfg.restarts, 0.0);
    parallel_for(cfg.restarts, cfg.threads, [&](std::size_t i) {
        RngStream local = derive_stream(rng, kRestartTag, i);
        const CVector start = random_unit_vector(m, local);
        maxima[i] = sphere_extremize(w, q, true, cfg, start).value;
        minima[i] = sphere_extremize(w, q, false, cfg, start).value;
    });

    NormWindow win;
    win.max_ratio = *std::max_element(maxima.begin(), maxima.end());
    win.min_ratio = *std::min_element(minima.begin(), minima.end());

    RngStream baseline_rng = derive_stream(rng, kBaselineTag, 0);
    for (int j = 0; j < cfg.sample_baseline; ++j) {
        const CVector c = random_unit_vector(m, baseline_rng);
        const double ratio = ratio_at(w, c, q);
        win.max_ratio = std::max(win.max_ratio, ratio);
        win.min_ratio = std::min(win.min_ratio, ratio);
    }
    return win;
}

}  // namespace qlab

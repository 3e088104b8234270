#include "qlab/dvoretzky.hpp"

#include "qlab/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace qlab {

namespace {

constexpr std::uint64_t kSampleTag = 0x5a3317;
constexpr std::uint64_t kTrialTag = 0x721a1;
constexpr std::uint64_t kStartTag = 0x57a27;
constexpr std::uint64_t kSphereTag = 0x5b4e2;

struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0;
};

MeanStderr reduce(const std::vector<double>& v) {
    MeanStderr out;
    const double n = static_cast<double>(v.size());
    double acc = 0.0;
    for (double x : v) acc += x;
    out.mean = acc / n;
    double ss = 0.0;
    for (double x : v) ss += (x - out.mean) * (x - out.mean);
    out.stderr_ = v.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    return out;
}

// Ascent-plus-sampling lower bound on max ||x||_q / ||x||_2 over the subspace.
double subspace_max_ratio(const Isometry& w, double q, const AscentConfig& cfg,
                          const RngStream& rng) {
    double best = 0.0;
    std::vector<double> values(cfg.restarts, 0.0);
    parallel_for(cfg.restarts, cfg.threads, [&](std::size_t i) {
        RngStream local = derive_stream(rng, kStartTag, i);
        CVector start(w.m);
        for (int k = 0; k < w.m; ++k) {
            start(k) = Complex(local.normal(), local.normal());
        }
        start.normalize();
        values[i] = sphere_extremize(w, q, true, cfg, start).value;
    });
    for (double v : values) best = std::max(best, v);

    RngStream sample_rng = derive_stream(rng, kSphereTag, 0);
    for (int j = 0; j < cfg.sample_baseline; ++j) {
        CVector c(w.m);
        for (int k = 0; k < w.m; ++k) {
            c(k) = Complex(sample_rng.normal(), sample_rng.normal());
        }
        c.normalize();
        const CMatrix a = vec_to_matrix(w.matrix * c, w.d, w.r);
        best = std::max(best, schatten_norm(a, SchattenOrder(q)));
    }
    return best;
}

}  // namespace

NormStats estimate_M(int d, double q, int samples, const RngStream& rng,
                     int threads) {
    if (!(q >= 2.0)) {
        throw std::invalid_argument("estimate_M requires q >= 2");
    }
    if (d < 1 || samples < 2) {
        throw std::invalid_argument("estimate_M requires d >= 1 and samples >= 2");
    }
    std::vector<double> q_norms(samples, 0.0);
    std::vector<double> op_norms(samples, 0.0);
    parallel_for(samples, threads, [&](std::size_t i) {
        RngStream local = derive_stream(rng, kSampleTag, i);
        const CMatrix x = hs_sphere_point(d, local);
        const RVector s = singular_values(x);
        op_norms[i] = s.maxCoeff();
        double acc = 0.0;
        if (std::isinf(q)) {
            q_norms[i] = op_norms[i];
        } else {
            for (Eigen::Index j = 0; j < s.size(); ++j) {
                acc += std::pow(s(j), q);
            }
            q_norms[i] = std::pow(acc, 1.0 / q);
        }
    });
    const MeanStderr mq = reduce(q_norms);
    const MeanStderr mop = reduce(op_norms);

    NormStats stats;
    stats.q = q;
    stats.d = d;
    stats.samples = samples;
    stats.opnorm_mean_hat = mop.mean;
    stats.opnorm_stderr = mop.stderr_;
    if (q == 2.0) {
        // Samples live on the HS sphere, so the mean is 1 by construction.
        stats.M_hat = 1.0;
        stats.M_stderr = 0.0;
    } else {
        stats.M_hat = mq.mean;
        stats.M_stderr = mq.stderr_;
    }

    const double lower = std::pow(static_cast<double>(d), 1.0 / q - 0.5);
    if (stats.M_hat + 3.0 * stats.M_stderr < lower - 1e-12) {
        throw std::runtime_error("estimate_M: mean fell below the certified floor");
    }
    if (!std::isinf(q) && q > 2.0) {
        const double expo = 1.0 - 2.0 / q;
        const double holder = std::pow(mop.mean, expo);
        const double holder_err =
            expo * std::pow(mop.mean, expo - 1.0) * mop.stderr_;
        if (stats.M_hat > holder + 3.0 * (stats.M_stderr + holder_err) + 1e-12) {
            throw std::runtime_error("estimate_M: Holder chain violated");
        }
    }
    return stats;
}

int dvoretzky_dimension(int d, double q, const NormStats& stats, double epsilon,
                        double c_eff) {
    if (stats.d != d || stats.q != q) {
        throw std::invalid_argument("dvoretzky_dimension: stats mismatch (d, q)");
    }
    const double ratio = stats.M_hat / stats.b;
    const double raw = c_eff * epsilon * epsilon * ratio * ratio *
                       static_cast<double>(d) * static_cast<double>(d);
    const long rounded = std::lround(raw);
    return static_cast<int>(std::clamp<long>(rounded, 1, static_cast<long>(d) * d));
}

DvoretzkyWindow window_experiment(int d, double q, int m, int trials,
                                  const AscentConfig& cfg, const NormStats& stats,
                                  const RngStream& rng) {
    if (m < 1 || m > d * d) {
        throw DimensionError("window_experiment requires 1 <= m <= d^2");
    }
    DvoretzkyWindow win;
    win.d = d;
    win.q = q;
    win.m = m;
    win.trials = trials;
    win.per_trial.resize(trials);
    for (int t = 0; t < trials; ++t) {
        RngStream trial_rng = derive_stream(rng, kTrialTag, t);
        const Isometry w = random_subspace_basis(m, d, trial_rng);
        win.per_trial[t] = subspace_norm_window(w, q, cfg, trial_rng);
    }
    double eps = 0.0;
    for (const auto& trial : win.per_trial) {
        eps = std::max(eps, trial.max_ratio / stats.M_hat - 1.0);
        eps = std::max(eps, 1.0 - trial.min_ratio / stats.M_hat);
    }
    win.epsilon_effective = eps;
    return win;
}

std::vector<ShrinkingPoint> shrinking_experiment(int d, double q,
                                                 const std::vector<int>& m_list,
                                                 int trials,
                                                 const AscentConfig& cfg,
                                                 const RngStream& rng) {
    std::vector<ShrinkingPoint> sweep;
    sweep.reserve(m_list.size());
    for (std::size_t idx = 0; idx < m_list.size(); ++idx) {
        const int m = m_list[idx];
        if (m < 1 || m > d * d) {
            throw DimensionError("shrinking_experiment requires 1 <= m <= d^2");
        }
        ShrinkingPoint point;
        point.m = m;
        for (int t = 0; t < trials; ++t) {
            RngStream trial_rng =
                derive_stream(rng, kTrialTag, idx * 10007 + static_cast<std::uint64_t>(t));
            const Isometry w = random_subspace_basis(m, d, trial_rng);
            point.worst_max_ratio = std::max(
                point.worst_max_ratio, subspace_max_ratio(w, q, cfg, trial_rng));
        }
        point.empirical_C =
            point.worst_max_ratio /
            std::sqrt(static_cast<double>(m) / (static_cast<double>(d) * d));
        sweep.push_back(point);
    }
    return sweep;
}

}  // namespace qlab

#include "qlab/violation.hpp"

#include "qlab/entropy.hpp"
#include "qlab/parallel.hpp"
#include "qlab/rng.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <stdexcept>

namespace qlab {

namespace {

constexpr std::uint64_t kChannelTag = 0xc4a77e1;
constexpr std::uint64_t kOptimizerTag = 0x0b71;

}  // namespace

int critical_m(int d, double p) {
    if (d < 2 || !(p > 1.0)) {
        throw std::invalid_argument("critical_m requires d >= 2 and p > 1");
    }
    const double exponent = std::isinf(p) ? 1.0 : 1.0 + 1.0 / p;
    const long raw = std::lround(std::pow(static_cast<double>(d), exponent));
    return static_cast<int>(std::clamp<long>(raw, 1, static_cast<long>(d) * d));
}

ViolationReport run_violation(double p, int d, int m, FieldTag field,
                              std::uint64_t seed, const AscentConfig& cfg,
                              int trial) {
    if (!(p > 1.0)) {
        throw std::invalid_argument("run_violation requires p > 1");
    }
    if (m < 1 || m > d * d) {
        throw DimensionError("run_violation requires 1 <= m <= d^2");
    }
    RngStream base(seed, substream_id(0xce11u, static_cast<std::uint64_t>(trial)));

    RngStream channel_rng = derive_stream(base, kChannelTag, 0);
    PartialTraceChannel channel(haar_isometry(m, d, d, field, channel_rng));

    if (field == FieldTag::Real) {
        const PartialTraceChannel conj = conjugate_channel(channel);
        const double defect =
            (conj.isometry.matrix - channel.isometry.matrix).cwiseAbs().maxCoeff();
        if (defect != 0.0) {
            throw std::runtime_error("real channel is not self-conjugate");
        }
    }

    const MaxNormEstimate est = estimate_max_output_norm(
        channel, p, cfg, derive_stream(base, kOptimizerTag, 0));
    const ProductBounds bounds = certified_product_lower_bounds(channel, p);

    ViolationReport rep;
    rep.p = p;
    rep.d = d;
    rep.m = m;
    rep.seed = seed;
    rep.field = field;
    rep.trial = trial;
    rep.single_norm_estimate = est.best_value;
    rep.single_entropy_estimate = entropy_from_p_norm(est.best_value, p);
    rep.baseline_max = est.baseline_max;
    rep.product_lambda_max = bounds.lambda_max;
    rep.product_p_norm_lb = bounds.p_norm_lb;
    rep.product_entropy_ub = bounds.entropy_ub;
    rep.overlap_psi_d = bounds.overlap_psi_d;
    rep.certified_entropy_cap =
        (std::isinf(p) ? 1.0 : p / (p - 1.0)) *
        std::log(static_cast<double>(d) * d / static_cast<double>(m));
    rep.multiplicativity_gap =
        bounds.p_norm_lb - est.best_value * est.best_value;
    rep.additivity_gap = 2.0 * rep.single_entropy_estimate - bounds.entropy_ub;
    rep.violation_detected = rep.additivity_gap > 0.0;

    if (rep.product_lambda_max < bounds.bound_m_over_d2 - 1e-9) {
        throw std::runtime_error("certified eigenvalue bound failed");
    }
    if (rep.product_entropy_ub > rep.certified_entropy_cap + 1e-9) {
        throw std::runtime_error("certified entropy cap failed");
    }
    return rep;
}

ScanResult run_scan(const ScanGrid& grid, const AscentConfig& cfg,
                    std::uint64_t master_seed) {
    if (grid.m_rule == MRule::Explicit &&
        grid.explicit_m.size() != grid.d_values.size()) {
        throw std::invalid_argument("explicit m list must pair with d values");
    }
    struct Cell {
        double p;
        int d;
        int m;
        int trial;
        int global_trial;
    };
    std::vector<Cell> cells;
    int counter = 0;
    for (double p : grid.p_values) {
        for (std::size_t di = 0; di < grid.d_values.size(); ++di) {
            const int d = grid.d_values[di];
            const int m = grid.m_rule == MRule::Critical ? critical_m(d, p)
                                                         : grid.explicit_m[di];
            for (int t = 0; t < grid.trials; ++t) {
                cells.push_back({p, d, m, t, counter++});
            }
        }
    }

    ScanResult result;
    result.reports.resize(cells.size());
    parallel_for(cells.size(), cfg.threads, [&](std::size_t i) {
        const Cell& c = cells[i];
        AscentConfig local = cfg;
        local.threads = 1;  // the grid is the parallel axis
        result.reports[i] = run_violation(c.p, c.d, c.m, grid.field, master_seed,
                                          local, c.global_trial);
    });

    // Per-(p, d) summary in grid order.
    for (double p : grid.p_values) {
        for (std::size_t di = 0; di < grid.d_values.size(); ++di) {
            const int d = grid.d_values[di];
            ScanSummaryCell sum;
            sum.p = p;
            sum.d = d;
            int n = 0;
            for (const auto& rep : result.reports) {
                if (rep.p == p && rep.d == d) {
                    sum.m = rep.m;
                    sum.violation_fraction += rep.violation_detected ? 1.0 : 0.0;
                    sum.mean_multiplicativity_gap += rep.multiplicativity_gap;
                    sum.mean_additivity_gap += rep.additivity_gap;
                    ++n;
                }
            }
            if (n > 0) {
                sum.violation_fraction /= n;
                sum.mean_multiplicativity_gap /= n;
                sum.mean_additivity_gap /= n;
                result.summary.push_back(sum);
            }
        }
    }
    return result;
}

namespace {
nlohmann::json order_to_json(double p) {
    if (std::isinf(p)) return nlohmann::json("inf");
    return nlohmann::json(p);
}
}  // namespace

nlohmann::json report_to_json(const ViolationReport& rep) {
    return nlohmann::json{
        {"schema", "v1"},
        {"p", order_to_json(rep.p)},
        {"d", rep.d},
        {"m", rep.m},
        {"seed", rep.seed},
        {"field", rep.field == FieldTag::Real ? "real" : "complex"},
        {"trial", rep.trial},
        {"single_norm_estimate", rep.single_norm_estimate},
        {"single_entropy_estimate", rep.single_entropy_estimate},
        {"baseline_max", rep.baseline_max},
        {"product_lambda_max", rep.product_lambda_max},
        {"product_p_norm_lb", rep.product_p_norm_lb},
        {"product_entropy_ub", rep.product_entropy_ub},
        {"certified_entropy_cap", rep.certified_entropy_cap},
        {"overlap_psi_d", rep.overlap_psi_d},
        {"multiplicativity_gap", rep.multiplicativity_gap},
        {"additivity_gap", rep.additivity_gap},
        {"violation_detected", rep.violation_detected},
        {"certification",
         {{"single_norm_estimate", "estimate"},
          {"single_entropy_estimate", "estimate"},
          {"product_lambda_max", "certified"},
          {"product_p_norm_lb", "certified"},
          {"product_entropy_ub", "certified"},
          {"certified_entropy_cap", "certified"}}}};
}

nlohmann::json scan_to_json(const ScanResult& scan) {
    nlohmann::json reports = nlohmann::json::array();
    for (const auto& rep : scan.reports) {
        reports.push_back(report_to_json(rep));
    }
    nlohmann::json summary = nlohmann::json::array();
    for (const auto& cell : scan.summary) {
        summary.push_back({{"p", order_to_json(cell.p)},
                           {"d", cell.d},
                           {"m", cell.m},
                           {"violation_fraction", cell.violation_fraction},
                           {"mean_multiplicativity_gap", cell.mean_multiplicativity_gap},
                           {"mean_additivity_gap", cell.mean_additivity_gap}});
    }
    return nlohmann::json{
        {"schema", "v1"}, {"reports", std::move(reports)}, {"summary", std::move(summary)}};
}

}  // namespace qlab

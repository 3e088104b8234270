#pragma once

#include "qlab/channels.hpp"
#include "qlab/optimize.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace qlab {

// One end-to-end run: sample a channel, estimate its maximum output p-norm,
// and compute the certified bounds for the product with its conjugate.
// Fields marked "estimate" are optimizer lower/upper bounds, not certified.
struct ViolationReport {
    double p = 2.0;
    int d = 0;
    int m = 0;
    std::uint64_t seed = 0;
    FieldTag field = FieldTag::Complex;
    int trial = 0;

    double single_norm_estimate = 0.0;    // estimate (lower bound on the max norm)
    double single_entropy_estimate = 0.0; // estimate (upper bound on S_p^min)
    double baseline_max = 0.0;

    double product_lambda_max = 0.0;      // certified
    double product_p_norm_lb = 0.0;       // certified lower bound
    double product_entropy_ub = 0.0;      // certified upper bound
    double certified_entropy_cap = 0.0;   // (p/(p-1)) log(d^2/m)
    double overlap_psi_d = 0.0;           // recorded, not asserted

    double multiplicativity_gap = 0.0;    // product_p_norm_lb - estimate^2
    double additivity_gap = 0.0;          // 2*estimate_entropy - product_entropy_ub
    bool violation_detected = false;
};

enum class MRule { Critical, Explicit };

struct ScanGrid {
    std::vector<double> p_values;
    std::vector<int> d_values;
    MRule m_rule = MRule::Critical;
    std::vector<int> explicit_m;  // paired with d_values when m_rule = Explicit
    int trials = 5;
    FieldTag field = FieldTag::Complex;
};

struct ScanSummaryCell {
    double p = 0.0;
    int d = 0;
    int m = 0;
    double violation_fraction = 0.0;
    double mean_multiplicativity_gap = 0.0;
    double mean_additivity_gap = 0.0;
};

struct ScanResult {
    std::vector<ViolationReport> reports;
    std::vector<ScanSummaryCell> summary;
};

// round(d^(1+1/p)) clamped to [1, d^2].
int critical_m(int d, double p);

ViolationReport run_violation(double p, int d, int m, FieldTag field,
                              std::uint64_t seed, const AscentConfig& cfg,
                              int trial = 0);

ScanResult run_scan(const ScanGrid& grid, const AscentConfig& cfg,
                    std::uint64_t master_seed);

nlohmann::json report_to_json(const ViolationReport& rep);
nlohmann::json scan_to_json(const ScanResult& scan);

}  // namespace qlab

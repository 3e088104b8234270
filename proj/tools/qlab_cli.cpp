#include "qlab/channels.hpp"
#include "qlab/dvoretzky.hpp"
#include "qlab/ensembles.hpp"
#include "qlab/json_io.hpp"
#include "qlab/optimize.hpp"
#include "qlab/violation.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

double parse_order(const std::string& text, const char* flag) {
    if (text == "inf" || text == "Inf" || text == "INF") {
        return qlab::kInfOrder;
    }
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw CLI::ValidationError(std::string(flag) + ": expected a number or 'inf'");
    }
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("QLAB_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
}

json order_json(double p) {
    return std::isinf(p) ? json("inf") : json(p);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random-channel output-norm and subspace-concentration experiments"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "worker threads (0 = auto)");

    // channel-sample
    auto* sample = app.add_subcommand("channel-sample", "sample a Haar channel isometry");
    int s_d = 4, s_m = 8;
    std::uint64_t s_seed = default_seed();
    bool s_real = false;
    std::string s_out = "channel.json";
    sample->add_option("--d", s_d, "output dimension")->required();
    sample->add_option("--m", s_m, "input dimension")->required();
    sample->add_option("--seed", s_seed, "master seed");
    sample->add_flag("--real", s_real, "orthogonal (real) ensemble");
    sample->add_option("--out", s_out, "output file")->required();

    // maxnorm
    auto* maxnorm = app.add_subcommand("maxnorm", "estimate the maximum output p-norm");
    std::string mn_channel, mn_p = "2", mn_out;
    qlab::AscentConfig mn_cfg;
    std::uint64_t mn_seed = default_seed();
    maxnorm->add_option("--channel", mn_channel, "channel file")->required();
    maxnorm->add_option("--p", mn_p, "Renyi order (> 1 or 'inf')");
    maxnorm->add_option("--restarts", mn_cfg.restarts, "ascent restarts");
    maxnorm->add_option("--iters", mn_cfg.max_iters, "max iterations per restart");
    maxnorm->add_option("--samples", mn_cfg.sample_baseline, "random-sampling baseline size");
    maxnorm->add_option("--seed", mn_seed, "master seed");
    maxnorm->add_option("--out", mn_out, "report file");

    // violation
    auto* viol = app.add_subcommand("violation", "single multiplicativity-gap run");
    std::string v_p = "2", v_out;
    int v_d = 8, v_m = -1;
    std::uint64_t v_seed = default_seed();
    bool v_real = false;
    viol->add_option("--p", v_p, "Renyi order (> 1)")->required();
    viol->add_option("--d", v_d, "output dimension")->required();
    viol->add_option("--m", v_m, "input dimension (default: round d^(1+1/p))");
    viol->add_option("--seed", v_seed, "master seed");
    viol->add_flag("--real", v_real, "use the real ensemble");
    viol->add_option("--out", v_out, "report file");
    qlab::AscentConfig v_cfg;
    viol->add_option("--restarts", v_cfg.restarts, "ascent restarts");
    viol->add_option("--iters", v_cfg.max_iters, "max iterations per restart");
    viol->add_option("--samples", v_cfg.sample_baseline, "baseline size");

    // scan
    auto* scan = app.add_subcommand("scan", "grid of violation runs");
    std::string sc_config, sc_out;
    std::uint64_t sc_seed = default_seed();
    scan->add_option("--config-file", sc_config, "grid config JSON (optional)");
    scan->add_option("--seed", sc_seed, "master seed");
    scan->add_option("--out", sc_out, "report file");
    qlab::AscentConfig sc_cfg;
    scan->add_option("--restarts", sc_cfg.restarts, "ascent restarts");
    scan->add_option("--iters", sc_cfg.max_iters, "max iterations per restart");
    scan->add_option("--samples", sc_cfg.sample_baseline, "baseline size");

    // dvoretzky
    auto* dv = app.add_subcommand("dvoretzky", "sphere-mean and subspace-window experiments");
    dv->require_subcommand(1);

    auto* dv_est = dv->add_subcommand("estimate-m", "mean Schatten q-norm over the HS sphere");
    int e_d = 16, e_samples = 500;
    std::string e_q = "4", e_out;
    std::uint64_t e_seed = default_seed();
    dv_est->add_option("--d", e_d, "matrix dimension")->required();
    dv_est->add_option("--q", e_q, "Schatten order (>= 2 or 'inf')")->required();
    dv_est->add_option("--samples", e_samples, "Monte Carlo samples");
    dv_est->add_option("--seed", e_seed, "master seed");
    dv_est->add_option("--out", e_out, "report file");

    auto* dv_win = dv->add_subcommand("window", "two-sided norm window on random subspaces");
    int w_d = 16, w_m = 64, w_trials = 20, w_samples = 500;
    std::string w_q = "4", w_out, w_format = "json";
    std::uint64_t w_seed = default_seed();
    qlab::AscentConfig w_cfg;
    dv_win->add_option("--d", w_d, "matrix dimension")->required();
    dv_win->add_option("--q", w_q, "Schatten order (> 2 or 'inf')")->required();
    dv_win->add_option("--m", w_m, "subspace dimension")->required();
    dv_win->add_option("--trials", w_trials, "subspace trials");
    dv_win->add_option("--samples", w_samples, "sphere-mean samples");
    dv_win->add_option("--restarts", w_cfg.restarts, "ascent restarts");
    dv_win->add_option("--seed", w_seed, "master seed");
    dv_win->add_option("--format", w_format, "json|csv");
    dv_win->add_option("--out", w_out, "output file");

    auto* dv_shr = dv->add_subcommand("shrink", "one-sided max-ratio sweep over m");
    int h_d = 16, h_trials = 5;
    std::string h_q = "inf", h_out, h_format = "csv";
    std::vector<int> h_m_list;
    std::uint64_t h_seed = default_seed();
    qlab::AscentConfig h_cfg;
    dv_shr->add_option("--d", h_d, "matrix dimension")->required();
    dv_shr->add_option("--q", h_q, "Schatten order (> 2 or 'inf')")->required();
    dv_shr->add_option("--m-list", h_m_list, "subspace dimensions")->required();
    dv_shr->add_option("--trials", h_trials, "trials per m");
    dv_shr->add_option("--restarts", h_cfg.restarts, "ascent restarts");
    dv_shr->add_option("--seed", h_seed, "master seed");
    dv_shr->add_option("--format", h_format, "json|csv");
    dv_shr->add_option("--out", h_out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);
        }
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*sample) {
            if (s_m < 1 || s_m > s_d * s_d) {
                std::cerr << "error: need 1 <= m <= d^2\n";
                return kExitUsage;
            }
            qlab::RngStream rng(s_seed, 0);
            qlab::IsometryRecord rec;
            rec.isometry = qlab::haar_isometry(
                s_m, s_d, s_d, s_real ? qlab::FieldTag::Real : qlab::FieldTag::Complex,
                rng);
            rec.seed = s_seed;
            rec.stream = 0;
            qlab::write_json_file(s_out, qlab::isometry_to_json(rec));
            std::cout << "channel d=" << s_d << " m=" << s_m
                      << (s_real ? " real" : " complex") << " seed=" << s_seed
                      << " -> " << s_out << "\n";
        } else if (*maxnorm) {
            const double p = parse_order(mn_p, "--p");
            if (!(p > 1.0)) {
                std::cerr << "error: --p must be > 1\n";
                return kExitUsage;
            }
            mn_cfg.threads = threads;
            const auto rec = qlab::isometry_from_json(qlab::read_json_file(mn_channel));
            qlab::PartialTraceChannel channel(rec.isometry);
            qlab::RngStream rng(mn_seed, 1);
            const auto est = qlab::estimate_max_output_norm(channel, p, mn_cfg, rng);
            json out{{"schema", "v1"},
                     {"p", order_json(p)},
                     {"d", rec.isometry.d},
                     {"m", rec.isometry.m},
                     {"seed", mn_seed},
                     {"best_value", est.best_value},
                     {"certification", "estimate"},
                     {"baseline_max", est.baseline_max},
                     {"per_restart_values", est.per_restart_values},
                     {"iterations_used", est.iterations_used}};
            std::cout << "max output p-norm estimate (lower bound): "
                      << est.best_value << "\n";
            if (!mn_out.empty()) qlab::write_json_file(mn_out, out);
        } else if (*viol) {
            const double p = parse_order(v_p, "--p");
            if (!(p > 1.0)) {
                std::cerr << "error: --p must be > 1\n";
                return kExitUsage;
            }
            if (p < 1.5) {
                std::cerr << "warning: for p < 1.5 a violation typically needs "
                             "dimensions beyond desk scale\n";
            }
            if (v_m < 0) v_m = qlab::critical_m(v_d, p);
            v_cfg.threads = threads;
            const auto rep = qlab::run_violation(
                p, v_d, v_m,
                v_real ? qlab::FieldTag::Real : qlab::FieldTag::Complex, v_seed,
                v_cfg);
            std::cout << "p=" << v_p << " d=" << v_d << " m=" << v_m
                      << " mult_gap=" << rep.multiplicativity_gap
                      << " add_gap=" << rep.additivity_gap
                      << " detected=" << (rep.violation_detected ? "yes" : "no")
                      << "\n";
            if (!v_out.empty()) qlab::write_json_file(v_out, qlab::report_to_json(rep));
        } else if (*scan) {
            qlab::ScanGrid grid;
            grid.p_values = {2.0, 3.0, 4.0};
            grid.d_values = {8, 16, 32};
            if (!sc_config.empty()) {
                const json cfg = qlab::read_json_file(sc_config);
                grid.p_values.clear();
                for (const auto& v : cfg.at("p_values")) {
                    grid.p_values.push_back(
                        v.is_string() ? parse_order(v.get<std::string>(), "p_values")
                                      : v.get<double>());
                }
                grid.d_values = cfg.at("d_values").get<std::vector<int>>();
                const std::string rule = cfg.value("m_rule", "critical");
                if (rule == "explicit") {
                    grid.m_rule = qlab::MRule::Explicit;
                    grid.explicit_m = cfg.at("explicit_m").get<std::vector<int>>();
                } else if (rule != "critical") {
                    std::cerr << "error: m_rule must be critical or explicit\n";
                    return kExitUsage;
                }
                grid.trials = cfg.value("trials", 5);
                grid.field = cfg.value("field", std::string("complex")) == "real"
                                 ? qlab::FieldTag::Real
                                 : qlab::FieldTag::Complex;
            }
            sc_cfg.threads = threads;
            const auto result = qlab::run_scan(grid, sc_cfg, sc_seed);
            for (const auto& rep : result.reports) {
                std::cout << "p=" << rep.p << " d=" << rep.d << " m=" << rep.m
                          << " trial=" << rep.trial
                          << " mult_gap=" << rep.multiplicativity_gap
                          << " add_gap=" << rep.additivity_gap
                          << " detected=" << (rep.violation_detected ? "yes" : "no")
                          << "\n";
            }
            if (!sc_out.empty()) qlab::write_json_file(sc_out, qlab::scan_to_json(result));
        } else if (*dv_est) {
            const double q = parse_order(e_q, "--q");
            if (!(q >= 2.0)) {
                std::cerr << "error: --q must be >= 2\n";
                return kExitUsage;
            }
            qlab::RngStream rng(e_seed, 2);
            const auto stats = qlab::estimate_M(e_d, q, e_samples, rng, threads);
            json out{{"schema", "v1"},
                     {"d", stats.d},
                     {"q", order_json(q)},
                     {"samples", stats.samples},
                     {"M_hat", stats.M_hat},
                     {"M_stderr", stats.M_stderr},
                     {"opnorm_mean_hat", stats.opnorm_mean_hat},
                     {"opnorm_stderr", stats.opnorm_stderr},
                     {"b", stats.b},
                     {"seed", e_seed}};
            std::cout << "M_hat=" << stats.M_hat << " +- " << stats.M_stderr
                      << " (op-norm mean " << stats.opnorm_mean_hat << ")\n";
            if (!e_out.empty()) qlab::write_json_file(e_out, out);
        } else if (*dv_win) {
            const double q = parse_order(w_q, "--q");
            if (!(q > 2.0)) {
                std::cerr << "error: --q must be > 2\n";
                return kExitUsage;
            }
            w_cfg.threads = threads;
            qlab::RngStream rng(w_seed, 3);
            const auto stats = qlab::estimate_M(w_d, q, w_samples, rng, threads);
            const auto win = qlab::window_experiment(w_d, q, w_m, w_trials, w_cfg,
                                                     stats, rng);
            std::cout << "d=" << w_d << " q=" << w_q << " m=" << w_m
                      << " epsilon_effective=" << win.epsilon_effective << "\n";
            if (!w_out.empty()) {
                if (w_format == "csv") {
                    std::ostringstream csv;
                    csv << "d,q,m,trial,max_ratio,min_ratio\n";
                    for (int t = 0; t < win.trials; ++t) {
                        csv << w_d << ',' << w_q << ',' << w_m << ',' << t << ','
                            << win.per_trial[t].max_ratio << ','
                            << win.per_trial[t].min_ratio << "\n";
                    }
                    write_text_file(w_out, csv.str());
                } else {
                    json trials = json::array();
                    for (const auto& t : win.per_trial) {
                        trials.push_back({{"max_ratio", t.max_ratio},
                                          {"min_ratio", t.min_ratio}});
                    }
                    qlab::write_json_file(
                        w_out, json{{"schema", "v1"},
                                    {"d", w_d},
                                    {"q", order_json(q)},
                                    {"m", w_m},
                                    {"trials", w_trials},
                                    {"M_hat", stats.M_hat},
                                    {"epsilon_effective", win.epsilon_effective},
                                    {"per_trial", std::move(trials)},
                                    {"seed", w_seed}});
                }
            }
        } else if (*dv_shr) {
            const double q = parse_order(h_q, "--q");
            if (!(q > 2.0)) {
                std::cerr << "error: --q must be > 2\n";
                return kExitUsage;
            }
            h_cfg.threads = threads;
            qlab::RngStream rng(h_seed, 4);
            const auto sweep =
                qlab::shrinking_experiment(h_d, q, h_m_list, h_trials, h_cfg, rng);
            for (const auto& pt : sweep) {
                std::cout << "m=" << pt.m << " worst_max_ratio=" << pt.worst_max_ratio
                          << " empirical_C=" << pt.empirical_C << "\n";
            }
            if (!h_out.empty()) {
                if (h_format == "csv") {
                    std::ostringstream csv;
                    csv << "d,q,m,worst_max_ratio,empirical_C\n";
                    for (const auto& pt : sweep) {
                        csv << h_d << ',' << h_q << ',' << pt.m << ','
                            << pt.worst_max_ratio << ',' << pt.empirical_C << "\n";
                    }
                    write_text_file(h_out, csv.str());
                } else {
                    json points = json::array();
                    for (const auto& pt : sweep) {
                        points.push_back({{"m", pt.m},
                                          {"worst_max_ratio", pt.worst_max_ratio},
                                          {"empirical_C", pt.empirical_C}});
                    }
                    qlab::write_json_file(h_out,
                                          json{{"schema", "v1"},
                                               {"d", h_d},
                                               {"q", order_json(q)},
                                               {"trials", h_trials},
                                               {"points", std::move(points)},
                                               {"seed", h_seed}});
                }
            }
        }
    } catch (const qlab::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}

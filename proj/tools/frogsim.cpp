// frogsim: simulation lab and bounds engine for frog models with drift
// on rooted d-ary trees.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "frog/bounds.hpp"
#include "frog/coupling.hpp"
#include "frog/fm.hpp"
#include "frog/io.hpp"
#include "frog/rfm.hpp"
#include "frog/sweep.hpp"
#include "frog/util.hpp"
#include "frog/version.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitViolation = 4;

int resolve_workers(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("FROGSIM_WORKERS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    return frog::default_worker_count();
}

void write_output(const std::string& path, const std::string& body) {
    if (path.empty() || path == "-") {
        std::cout << body;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open output file: " + path);
    out << body;
    if (!out) throw std::ios_base::failure("write failed: " + path);
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Line-oriented `key = value` config files with '#' comments.  Values
// are injected as trailing flags unless the same flag already appears
// on the command line, so explicit flags always win.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    std::string path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            break;
        }
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line without '=': " + line);
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || key == "config")
            continue;
        std::string flag = "--" + key;
        bool overridden = false;
        for (const std::string& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) {
                overridden = true;
                break;
            }
        if (overridden) continue;
        args.push_back(flag);
        args.push_back(value);
    }
    return args;
}

frog::SchedulerPolicy parse_policy(const std::string& s) {
    if (s == "uniform") return frog::SchedulerPolicy::UniformRandom;
    if (s == "fifo") return frog::SchedulerPolicy::Fifo;
    throw std::invalid_argument("--policy expects uniform|fifo");
}

frog::RootFrogMode parse_root_mode(const std::string& s) {
    if (s == "bernoulli") return frog::RootFrogMode::BernoulliReturn;
    if (s == "descent") return frog::RootFrogMode::PureDescent;
    throw std::invalid_argument("--root-mode expects bernoulli|descent");
}

std::string fmt(double x) { return frog::format_number(x); }

struct SimulateArgs {
    std::string model = "fm";
    int d = 2;
    double p = -1.0;
    double rho = -1.0;
    int depth = 10;
    int sleeper_depth = -1;
    long long steps = 10'000'000;
    long long trials = 100;
    std::uint64_t seed = 1;
    std::string policy = "uniform";
    std::string root_mode = "bernoulli";
    std::string check = "off";
    std::string out = "-";
    int workers = 0;
};

int cmd_simulate(const SimulateArgs& a) {
    frog::SimConfig cfg;
    cfg.params = a.rho >= 0.0 ? frog::ModelParams::from_rho(a.d, a.rho)
                              : frog::ModelParams::from_p(a.d, a.p < 0.0 ? 0.0 : a.p);
    cfg.depth_cap = a.depth;
    cfg.sleeper_depth = a.sleeper_depth;
    cfg.step_cap = a.steps;
    cfg.policy = parse_policy(a.policy);
    cfg.root_mode = parse_root_mode(a.root_mode);
    cfg.validate();
    if (a.trials < 1) throw std::invalid_argument("--trials must be >= 1");

    int workers = resolve_workers(a.workers);
    std::vector<frog::TrialOutcome> outcomes(a.trials);
    frog::parallel_for_trials(a.trials, workers, [&](long long t) {
        std::uint64_t key = frog::trial_key(a.seed, static_cast<std::uint64_t>(t));
        if (a.model == "fm")
            outcomes[t] = frog::run_fm(cfg, key);
        else if (a.model == "fmprime")
            outcomes[t] = frog::run_fm_prime(cfg, key);
        else
            outcomes[t] = frog::run_rfm(cfg, frog::EarlyRemovalPolicy::none(), key);
    });

    frog::ConfigEcho echo{{"command", "simulate"},
                          {"model", a.model},
                          {"d", std::to_string(a.d)},
                          {"p", fmt(cfg.params.p)},
                          {"rho", fmt(cfg.params.rho)},
                          {"depth_cap", std::to_string(cfg.depth_cap)},
                          {"sleeper_depth", std::to_string(cfg.effective_sleeper_depth())},
                          {"step_cap", std::to_string(cfg.step_cap)},
                          {"trials", std::to_string(a.trials)},
                          {"seed", std::to_string(a.seed)},
                          {"policy", a.policy},
                          {"root_mode", a.root_mode},
                          {"check_invariants", a.check}};
    std::string body = frog::trials_csv(echo, cfg, outcomes, a.model == "rfm",
                                        a.model == "rfm" ? cfg.effective_sleeper_depth() : -1);
    frog::RunSummary s;
    s.trials = a.trials;
    double m = 0.0;
    for (auto& o : outcomes) m += static_cast<double>(o.root_visits);
    m /= static_cast<double>(a.trials);
    double var = 0.0;
    for (auto& o : outcomes) {
        double d2 = static_cast<double>(o.root_visits) - m;
        var += d2 * d2;
    }
    s.mean = m;
    s.variance = a.trials > 1 ? var / static_cast<double>(a.trials - 1) : 0.0;
    body += frog::summary_footer(s);
    write_output(a.out, body);
    return 0;
}

struct CoupleArgs {
    std::string kind = "fm-kd";
    int d = 2;
    int k = 2;
    double p = 0.3;
    int depth = 10;
    long long steps = 10'000'000;
    long long trials = 100;
    std::uint64_t seed = 1;
    std::string check = "on";
    std::string out = "-";
    std::string report = "-";
    int workers = 0;
};

int cmd_couple(const CoupleArgs& a) {
    if (a.kind != "fm-kd" && a.kind != "rfm-plus1")
        throw std::invalid_argument("--kind expects fm-kd|rfm-plus1");
    bool check = a.check != "off";
    int workers = resolve_workers(a.workers);
    std::vector<frog::CoupledOutcome> outcomes(a.trials);
    frog::parallel_for_trials(a.trials, workers, [&](long long t) {
        std::uint64_t key = frog::trial_key(a.seed, static_cast<std::uint64_t>(t));
        if (a.kind == "fm-kd")
            outcomes[t] = frog::run_coupled_fm(a.d, a.k, a.p, a.depth, a.steps, key, check);
        else
            outcomes[t] = frog::run_coupled_rfm(a.d, a.p, a.depth, a.steps, key, check);
    });
    frog::ConfigEcho echo{{"command", "couple"},
                          {"kind", a.kind},
                          {"d", std::to_string(a.d)},
                          {"k", std::to_string(a.k)},
                          {"p", fmt(a.p)},
                          {"depth_cap", std::to_string(a.depth)},
                          {"step_cap", std::to_string(a.steps)},
                          {"trials", std::to_string(a.trials)},
                          {"seed", std::to_string(a.seed)},
                          {"check_invariants", a.check}};
    write_output(a.out, frog::couple_csv(echo, a.kind, outcomes));

    long long violations = 0;
    for (auto& o : outcomes) violations += static_cast<long long>(o.log.violations.size());
    if (violations > 0) {
        std::string report = frog::violation_json(a.kind, outcomes);
        if (a.report.empty() || a.report == "-")
            std::cerr << report;
        else
            write_output(a.report, report);
        return kExitViolation;
    }
    return 0;
}

int cmd_bounds(int T, double tol, const std::string& json_path) {
    frog::ThresholdResult res = frog::critical_rho(T, tol);
    std::printf("# %s\n", frog::kVersion);
    std::printf("T = %d, tol = %s\n", T, fmt(tol).c_str());
    if (res.found) {
        std::printf("rho_star = %.10f\n", res.rho_star);
        std::printf("p_star   = %.10f\n", res.p_star);
        std::printf("bracket  = [%.10f, %.10f], crossings seen: %d\n", res.bracket_lo,
                    res.bracket_hi, res.crossings);
    } else {
        std::printf("rho_star = NONE (rho(1+pa_lb) never exceeds 1 on (0,1))\n");
    }
    std::printf("q_star   = %.17f\n", frog::q_star());
    std::printf("t,pa_lb(t,rho)\n");
    double rho_ref = res.found ? res.rho_star : 0.7107;
    for (int t : {1, 2, 5, 10, 20, 51, 100, 200}) {
        if (t > std::max(T, 51)) break;
        std::printf("%d,%.10f\n", t, frog::pa_lower_bound(t, rho_ref));
    }
    if (!json_path.empty()) write_output(json_path, frog::threshold_json(res));
    return 0;
}

int cmd_moments(double rho, int T, const std::string& base, const std::string& out) {
    if (base != "zero" && base != "bernoulli")
        throw std::invalid_argument("--base expects zero|bernoulli");
    frog::MomentBase b = base == "zero" ? frog::MomentBase::Zero : frog::MomentBase::Bernoulli;
    frog::MomentSequences m = frog::compute_moment_sequences(rho, T, b);
    frog::ConfigEcho echo{{"command", "moments"},
                          {"rho", fmt(rho)},
                          {"T", std::to_string(T)},
                          {"base", base}};
    write_output(out, frog::moments_csv(echo, m));
    return 0;
}

struct SweepArgs {
    int d = 2;
    std::vector<double> p_grid;
    std::vector<int> depth_grid;
    long long trials = 300;
    long long steps = 200'000;
    std::uint64_t seed = 1;
    std::string out = "-";
    int workers = 0;
};

int cmd_sweep(const SweepArgs& a) {
    frog::SweepReport rep = frog::run_sweep(a.d, a.p_grid, a.depth_grid, a.trials, a.steps,
                                            a.seed, resolve_workers(a.workers));
    std::string pg, dg;
    for (double p : a.p_grid) pg += (pg.empty() ? "" : " ") + fmt(p);
    for (int dd : a.depth_grid) dg += (dg.empty() ? "" : " ") + std::to_string(dd);
    frog::ConfigEcho echo{{"command", "sweep"},
                          {"d", std::to_string(a.d)},
                          {"p_grid", pg},
                          {"depth_grid", dg},
                          {"trials", std::to_string(a.trials)},
                          {"step_cap", std::to_string(a.steps)},
                          {"seed", std::to_string(a.seed)}};
    write_output(a.out, frog::sweep_csv(echo, rep));
    return 0;
}

struct VtArgs {
    int t = 0;
    double rho = 0.5;
    long long trials = 1000;
    std::uint64_t seed = 1;
    std::string mode = "both";
    std::string root_mode = "bernoulli";
    std::string base = "bernoulli";
    std::string out = "-";
};

int cmd_vt(const VtArgs& a) {
    frog::ModelParams params = frog::ModelParams::from_rho(2, a.rho);
    frog::RootFrogMode mode = parse_root_mode(a.root_mode);
    frog::ConfigEcho echo{{"command", "vt"},
                          {"t", std::to_string(a.t)},
                          {"rho", fmt(a.rho)},
                          {"trials", std::to_string(a.trials)},
                          {"seed", std::to_string(a.seed)},
                          {"mode", a.mode},
                          {"root_mode", a.root_mode},
                          {"base", a.base}};
    std::string body = frog::header_comment(echo);
    body += "mode,trial_id,t,v,a_event\n";
    auto summarize = [](const std::vector<long long>& vs) {
        double m = 0.0;
        for (long long v : vs) m += static_cast<double>(v);
        m /= static_cast<double>(vs.size());
        double var = 0.0;
        for (long long v : vs) {
            double d2 = static_cast<double>(v) - m;
            var += d2 * d2;
        }
        var = vs.size() > 1 ? var / static_cast<double>(vs.size() - 1) : 0.0;
        return std::make_pair(m, var);
    };
    if (a.mode == "empirical" || a.mode == "both") {
        std::vector<long long> vs(a.trials);
        for (long long i = 0; i < a.trials; ++i) {
            frog::VtSample s =
                frog::sample_vt(a.t, params, 1'000'000, frog::trial_key(a.seed, i), mode);
            vs[i] = s.v;
            body += "empirical," + std::to_string(i) + ',' + std::to_string(a.t) + ',' +
                    std::to_string(s.v) + ',' + std::to_string(s.a_event ? 1 : 0) + '\n';
        }
        auto [m, var] = summarize(vs);
        body += "# empirical mean=" + fmt(m) + " variance=" + fmt(var) + "\n";
    }
    if (a.mode == "bound" || a.mode == "both") {
        std::vector<long long> vs(a.trials);
        for (long long i = 0; i < a.trials; ++i) {
            frog::Stream rng(frog::fold(frog::trial_key(a.seed, i), frog::kTagExperiment));
            frog::MomentBase b =
                a.base == "zero" ? frog::MomentBase::Zero : frog::MomentBase::Bernoulli;
            vs[i] = frog::sample_rde(a.t, a.rho, b, rng);
            body += "bound," + std::to_string(i) + ',' + std::to_string(a.t) + ',' +
                    std::to_string(vs[i]) + ",0\n";
        }
        auto [m, var] = summarize(vs);
        body += "# bound mean=" + fmt(m) + " variance=" + fmt(var) +
                " (1{A} ~ Bernoulli(pa_lb), a lower-bound surrogate)\n";
    }
    write_output(a.out, body);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(frog::kVersion) +
                 " -- frog models with drift on d-ary trees: simulation and bounds"};
    app.require_subcommand(1);

    int bT = 51;
    double btol = 1e-5;
    std::string bjson;
    CLI::App* bounds = app.add_subcommand("bounds", "threshold computation and constants");
    bounds->add_option("--T", bT, "horizon for the P(A_T) product bound");
    bounds->add_option("--tol", btol, "bisection tolerance");
    bounds->add_option("--json", bjson, "also write a JSON report to this path");
    std::string bcfg;
    bounds->add_option("--config", bcfg, "key = value config file; flags override");

    double mrho = 0.72;
    int mT = 300;
    std::string mbase = "bernoulli", mout = "-";
    CLI::App* moments = app.add_subcommand("moments", "rigorous moment-bound sequences");
    moments->add_option("--rho", mrho, "upward probability")->required();
    moments->add_option("--T", mT, "horizon");
    moments->add_option("--base", mbase, "zero|bernoulli");
    moments->add_option("--out", mout, "output CSV path (- for stdout)");
    std::string mcfg;
    moments->add_option("--config", mcfg, "key = value config file; flags override");

    SimulateArgs sa;
    CLI::App* simulate = app.add_subcommand("simulate", "run fm|fmprime|rfm trials");
    simulate->add_option("--model", sa.model, "fm|fmprime|rfm")
        ->check(CLI::IsMember({"fm", "fmprime", "rfm"}));
    simulate->add_option("--d", sa.d, "tree degree");
    simulate->add_option("--p", sa.p, "drift probability");
    simulate->add_option("--rho", sa.rho, "upward probability (alternative to --p)");
    simulate->add_option("--depth", sa.depth, "depth cap");
    simulate->add_option("--sleeper-depth", sa.sleeper_depth,
                         "sleeper depth (default: all sites to the cap)");
    simulate->add_option("--steps", sa.steps, "step cap per trial");
    simulate->add_option("--trials", sa.trials, "number of trials");
    simulate->add_option("--seed", sa.seed, "master seed");
    simulate->add_option("--policy", sa.policy, "uniform|fifo");
    simulate->add_option("--root-mode", sa.root_mode, "bernoulli|descent (rfm only)");
    simulate->add_option("--check-invariants", sa.check, "on|off (default off)");
    simulate->add_option("--out", sa.out, "output CSV path (- for stdout)");
    simulate->add_option("--workers", sa.workers, "worker threads (0 = auto)");
    std::string scfg;
    simulate->add_option("--config", scfg, "key = value config file; flags override");

    CoupleArgs ca;
    CLI::App* couple = app.add_subcommand("couple", "lock-step coupled pairs");
    couple->add_option("--kind", ca.kind, "fm-kd|rfm-plus1");
    couple->add_option("--d", ca.d, "small-tree degree");
    couple->add_option("--k", ca.k, "block multiplier (fm-kd)");
    couple->add_option("--p", ca.p, "drift probability");
    couple->add_option("--depth", ca.depth, "depth cap");
    couple->add_option("--steps", ca.steps, "step cap per trial");
    couple->add_option("--trials", ca.trials, "number of trials");
    couple->add_option("--seed", ca.seed, "master seed");
    couple->add_option("--check-invariants", ca.check, "on|off (default on)");
    couple->add_option("--out", ca.out, "output CSV path");
    couple->add_option("--report", ca.report, "violation JSON path (- for stderr)");
    couple->add_option("--workers", ca.workers, "worker threads (0 = auto)");
    std::string ccfg;
    couple->add_option("--config", ccfg, "key = value config file; flags override");

    SweepArgs wa;
    CLI::App* sweep = app.add_subcommand("sweep", "p-grid recurrence diagnostics");
    sweep->add_option("--d", wa.d, "tree degree");
    sweep->add_option("--p-grid", wa.p_grid, "drift values")->delimiter(',')->required();
    sweep->add_option("--depth-grid", wa.depth_grid, "depth caps")->delimiter(',')->required();
    sweep->add_option("--trials", wa.trials, "trials per cell");
    sweep->add_option("--steps", wa.steps, "step cap per trial");
    sweep->add_option("--seed", wa.seed, "master seed");
    sweep->add_option("--out", wa.out, "output CSV path");
    sweep->add_option("--workers", wa.workers, "worker threads (0 = auto)");
    std::string wcfg;
    sweep->add_option("--config", wcfg, "key = value config file; flags override");

    VtArgs va;
    CLI::App* vt = app.add_subcommand("vt", "truncated visit counts V_t");
    vt->add_option("--t", va.t, "sleeper depth")->required();
    vt->add_option("--rho", va.rho, "upward probability")->required();
    vt->add_option("--trials", va.trials, "number of trials");
    vt->add_option("--seed", va.seed, "master seed");
    vt->add_option("--mode", va.mode, "empirical|bound|both")
        ->check(CLI::IsMember({"empirical", "bound", "both"}));
    vt->add_option("--root-mode", va.root_mode, "bernoulli|descent");
    vt->add_option("--base", va.base, "bound-mode recursion base, zero|bernoulli;"
                                      " pair zero with --root-mode descent for the"
                                      " like-for-like comparison");
    vt->add_option("--out", va.out, "output CSV path");
    std::string vcfg;
    vt->add_option("--config", vcfg, "key = value config file; flags override");

    std::vector<std::string> args;
    try {
        args = expand_config(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }
    std::vector<const char*> cargv;
    cargv.reserve(args.size());
    for (const std::string& s : args) cargv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*bounds) return cmd_bounds(bT, btol, bjson);
        if (*moments) return cmd_moments(mrho, mT, mbase, mout);
        if (*simulate) return cmd_simulate(sa);
        if (*couple) return cmd_couple(ca);
        if (*sweep) return cmd_sweep(wa);
        if (*vt) return cmd_vt(va);
    } catch (const std::ios_base::failure& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

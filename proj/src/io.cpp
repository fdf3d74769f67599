#include "frog/io.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "frog/version.hpp"

namespace frog {

std::string header_comment(const ConfigEcho& echo) {
    std::string out = std::string("# ") + kVersion + "\n";
    for (auto& [k, v] : echo) out += "# " + k + " = " + v + "\n";
    return out;
}

std::string format_number(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

namespace {
std::string row_common(const TrialOutcome& o) {
    std::string r = std::to_string(o.root_visits);
    r += ',' + std::to_string(o.frogs_woken);
    r += ',' + std::to_string(o.steps_used);
    r += ',';
    r += to_string(o.truncation);
    return r;
}
} // namespace

std::string trials_csv(const ConfigEcho& echo, const SimConfig& cfg,
                       const std::vector<TrialOutcome>& outcomes, bool rfm_columns,
                       int sleeper_t) {
    std::string out = header_comment(echo);
    out += "trial_id,d,p,depth_cap,step_cap,root_visits,frogs_woken,steps_used,truncation";
    if (rfm_columns) out += ",t,a_event,kill_hit_root,kill_hit_visited,kill_early,kill_cap";
    out += '\n';
    std::string params = std::to_string(cfg.params.d) + ',' + format_number(cfg.params.p) +
                         ',' + std::to_string(cfg.depth_cap) + ',' +
                         std::to_string(cfg.step_cap);
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const TrialOutcome& o = outcomes[i];
        out += std::to_string(static_cast<long long>(i)) + ',' + params + ',';
        out += row_common(o);
        if (rfm_columns) {
            out += ',' + std::to_string(sleeper_t);
            out += ',' + std::to_string(o.a_event ? 1 : 0);
            out += ',' + std::to_string(o.kills.hit_root);
            out += ',' + std::to_string(o.kills.hit_visited);
            out += ',' + std::to_string(o.kills.early);
            out += ',' + std::to_string(o.kills.depth_cap);
        }
        out += '\n';
    }
    return out;
}

std::string couple_csv(const ConfigEcho& echo, const std::string& kind,
                       const std::vector<CoupledOutcome>& outcomes) {
    std::string out = header_comment(echo);
    out += "trial_id,kind,violations,root_visits_small,root_visits_large,frogs_woken_small,"
           "frogs_woken_large,steps_used\n";
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const CoupledOutcome& o = outcomes[i];
        out += std::to_string(static_cast<long long>(i));
        out += ',' + kind;
        out += ',' + std::to_string(static_cast<long long>(o.log.violations.size()));
        out += ',' + std::to_string(o.small.root_visits);
        out += ',' + std::to_string(o.large.root_visits);
        out += ',' + std::to_string(o.small.frogs_woken);
        out += ',' + std::to_string(o.large.frogs_woken);
        out += ',' + std::to_string(o.small.steps_used);
        out += '\n';
    }
    return out;
}

std::string violation_json(const std::string& kind_label,
                           const std::vector<CoupledOutcome>& outcomes) {
    nlohmann::json j;
    j["schema"] = "frogsim/violation/v1";
    j["kind"] = kind_label;
    j["version"] = kVersion;
    long long total = 0;
    for (auto& o : outcomes) total += static_cast<long long>(o.log.violations.size());
    j["total_violations"] = total;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        if (outcomes[i].log.ok()) continue;
        const Violation& v = outcomes[i].log.violations.front();
        j["first"] = {{"trial", i},
                      {"trial_seed", outcomes[i].log.trial_seed},
                      {"tick", v.tick},
                      {"invariant", v.kind},
                      {"detail", v.detail}};
        break;
    }
    return j.dump(2) + "\n";
}

std::string threshold_json(const ThresholdResult& res) {
    nlohmann::json j;
    j["schema"] = "frogsim/threshold/v1";
    j["version"] = kVersion;
    j["T"] = res.T;
    j["tol"] = res.tol;
    j["found"] = res.found;
    j["crossings"] = res.crossings;
    if (res.found) {
        j["rho_star"] = res.rho_star;
        j["p_star"] = res.p_star;
        j["bracket"] = {res.bracket_lo, res.bracket_hi};
    }
    j["q_star"] = q_star();
    return j.dump(2) + "\n";
}

std::string moments_csv(const ConfigEcho& echo, const MomentSequences& m) {
    std::string out = header_comment(echo);
    out += "t,pa_lb,ev_lo,ev_hi,ev2_hi,x_hi,pz_lb\n";
    for (int t = 0; t <= m.horizon(); ++t) {
        out += std::to_string(t);
        out += ',' + format_number(m.pa_lb[t]);
        out += ',' + format_number(m.ev_lo[t]);
        out += ',' + format_number(m.ev_hi[t]);
        out += ',' + format_number(m.ev2_hi[t]);
        out += ',';
        out += m.x_hi[t] ? format_number(*m.x_hi[t]) : "undefined";
        out += ',';
        out += m.pz_lb[t] ? format_number(*m.pz_lb[t]) : "undefined";
        out += '\n';
    }
    return out;
}

std::string sweep_csv(const ConfigEcho& echo, const SweepReport& rep) {
    std::string out = header_comment(echo);
    out += "p,depth_cap,trials,mean_root_visits,se\n";
    for (const SweepCell& c : rep.cells) {
        out += format_number(c.p);
        out += ',' + std::to_string(c.depth);
        out += ',' + std::to_string(c.trials);
        out += ',' + format_number(c.mean);
        out += ',' + format_number(c.se);
        out += '\n';
    }
    for (const SweepDiagnostic& d : rep.diagnostics) {
        out += "# diagnostic p=" + format_number(d.p) +
               " growth_ratio=" + format_number(d.growth_ratio) + " " + d.label + "\n";
    }
    return out;
}

std::string summary_footer(const RunSummary& s) {
    std::string out = "# summary trials=" + std::to_string(s.trials);
    out += " mean=" + format_number(s.mean);
    out += " variance=" + format_number(s.variance);
    double se = s.trials > 0 ? std::sqrt(s.variance / static_cast<double>(s.trials)) : 0.0;
    out += " se=" + format_number(se) + "\n";
    return out;
}

} // namespace frog

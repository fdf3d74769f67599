#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

std::string bin() {
    const char* b = std::getenv("FROGSIM_BIN");
    REQUIRE(b != nullptr);
    return b;
}

struct CmdResult {
    int status = -1;
    std::string out;
};

CmdResult run(const std::string& args, bool raw = false) {
    std::string cmd = raw ? args + " 2>/dev/null" : bin() + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    CmdResult r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof(buf), p)) > 0) r.out.append(buf, n);
    int rc = pclose(p);
    r.status = WEXITSTATUS(rc);
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("identical invocations produce identical bytes") {
    CmdResult a = run("simulate --model rfm --d 2 --p 0.4 --depth 8 --trials 40 --seed 9");
    CmdResult b = run("simulate --model rfm --d 2 --p 0.4 --depth 8 --trials 40 --seed 9");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("# frogsim") == 0);
    CHECK(a.out.find("trial_id,") != std::string::npos);
}

TEST_CASE("worker count does not change the output") {
    std::string args = "simulate --model fm --d 2 --p 0.42 --depth 9 --trials 60 --seed 5";
    CmdResult w1 = run(args + " --workers 1");
    CmdResult w4 = run(args + " --workers 4");
    CHECK(w1.status == 0);
    CHECK(w1.out == w4.out);
    // the environment override picks the pool size, never the result
    CmdResult env = run("env FROGSIM_WORKERS=3 " + std::string(std::getenv("FROGSIM_BIN")) +
                            " " + args,
                        true);
    CHECK(env.status == 0);
    CHECK(env.out == w1.out);
}

namespace {
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

// every data row must carry value `want` in column `name`
int check_column(const std::string& csv, const std::string& name, const std::string& want) {
    std::istringstream lines(csv);
    std::string line;
    int col = -1, rows = 0;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields = split_csv(line);
        if (line.rfind("trial_id", 0) == 0) {
            for (std::size_t i = 0; i < fields.size(); ++i)
                if (fields[i] == name) col = int(i);
            continue;
        }
        REQUIRE(col >= 0);
        REQUIRE(int(fields.size()) > col);
        CHECK(fields[col] == want);
        ++rows;
    }
    return rows;
}
} // namespace

TEST_CASE("zero drift rows are all zero visits") {
    CmdResult r = run("simulate --model rfm --d 2 --p 0 --depth 6 --trials 10 --seed 3");
    CHECK(r.status == 0);
    CHECK(check_column(r.out, "root_visits", "0") == 10);
    CHECK(check_column(r.out, "d", "2") == 10);
}

TEST_CASE("depth cap zero forces zero visits") {
    CmdResult r = run("simulate --model fm --d 2 --p 0.45 --depth 0 --trials 5 --seed 2");
    CHECK(r.status == 0);
    CHECK(check_column(r.out, "root_visits", "0") == 5);
}

TEST_CASE("usage and io error exit codes") {
    CHECK(run("simulate --no-such-flag 1").status == 2);
    CHECK(run("nosuchcommand").status == 2);
    CHECK(run("simulate --model rfm --p 2.0 --trials 1").status == 2);
    CHECK(run("simulate --model fm --p 0.3 --trials 2 --out /nonexistent-dir/x.csv").status == 3);
    CHECK(run("vt --t 0 --rho 0.5 --trials 5").status == 0);
}

TEST_CASE("config file with flag override") {
    std::string cfg_path = "/tmp/frogsim_test_cfg.ini";
    {
        std::ofstream cfg(cfg_path);
        cfg << "# frogsim config\n";
        cfg << "model = rfm\n";
        cfg << "d = 2\n";
        cfg << "p = 0.4\n";
        cfg << "depth = 8\n";
        cfg << "trials = 25\n";
        cfg << "seed = 77\n";
    }
    CmdResult from_cfg = run("simulate --config " + cfg_path);
    CmdResult from_flags =
        run("simulate --model rfm --d 2 --p 0.4 --depth 8 --trials 25 --seed 77");
    CHECK(from_cfg.status == 0);
    CHECK(from_cfg.out == from_flags.out);
    // flags override config values
    CmdResult overridden = run("simulate --config " + cfg_path + " --seed 78");
    CHECK(overridden.status == 0);
    CHECK(overridden.out != from_cfg.out);
    std::remove(cfg_path.c_str());
}

TEST_CASE("bounds json report") {
    std::string json_path = "/tmp/frogsim_threshold.json";
    CmdResult r = run("bounds --T 51 --tol 1e-5 --json " + json_path);
    CHECK(r.status == 0);
    CHECK(r.out.find("rho_star = 0.7106") != std::string::npos);
    CHECK(r.out.find("p_star   = 0.415") != std::string::npos);
    auto j = nlohmann::json::parse(slurp(json_path));
    CHECK(j["schema"] == "frogsim/threshold/v1");
    CHECK(j["T"] == 51);
    double rho_star = j["rho_star"];
    CHECK(rho_star > 0.7106);
    CHECK(rho_star < 0.7108);
    CHECK(j["crossings"] == 1);
    std::remove(json_path.c_str());

    CmdResult none = run("bounds --T 1");
    CHECK(none.status == 0);
    CHECK(none.out.find("NONE") != std::string::npos);
}

TEST_CASE("moments table") {
    CmdResult r = run("moments --rho 0.72 --T 50 --base bernoulli");
    CHECK(r.status == 0);
    CHECK(r.out.find("t,pa_lb,ev_lo,ev_hi,ev2_hi,x_hi,pz_lb") != std::string::npos);
    CmdResult z = run("moments --rho 0.72 --T 5 --base zero");
    CHECK(z.status == 0);
    CHECK(z.out.find("undefined") != std::string::npos); // x at t = 0
}

TEST_CASE("couple runs clean and reports zero violations") {
    CmdResult r = run("couple --kind fm-kd --d 2 --k 2 --p 0.3 --depth 8 --trials 30 --seed 6");
    CHECK(r.status == 0);
    CHECK(r.out.find("trial_id,kind,violations,") != std::string::npos);
    CHECK(check_column(r.out, "violations", "0") == 30);
    CmdResult r2 = run("couple --kind rfm-plus1 --d 2 --p 0.4 --depth 10 --trials 30 --seed 6");
    CHECK(r2.status == 0);
}

TEST_CASE("vt both modes emit summaries") {
    CmdResult r = run("vt --t 2 --rho 0.72 --trials 300 --seed 4 --mode both");
    CHECK(r.status == 0);
    CHECK(r.out.find("# empirical mean=") != std::string::npos);
    CHECK(r.out.find("# bound mean=") != std::string::npos);
    CmdResult t0 = run("vt --t 0 --rho 0.6 --trials 400 --seed 4 --mode both");
    CHECK(t0.status == 0);
}

TEST_CASE("sweep emits cells and diagnostics") {
    CmdResult r = run("sweep --d 2 --p-grid 0.2,0.45 --depth-grid 4,8 --trials 60 --seed 5"
                      " --steps 40000");
    CHECK(r.status == 0);
    CHECK(r.out.find("p,depth_cap,trials,mean_root_visits,se") != std::string::npos);
    CHECK(r.out.find("# diagnostic p=") != std::string::npos);
    CHECK(r.out.find("consistent with") != std::string::npos);
}

// End-to-end checks of the installed binary through a shell. EFORCE_BIN is
// injected by the build as the absolute path of the cli target.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run_cli(const std::string& args, const std::string& stderr_path = "/dev/null") {
    const std::string cmd = std::string(EFORCE_BIN) + " " + args + " 2>" + stderr_path;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    Run r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) out.push_back(line);
    return out;
}

std::vector<double> row_cells(const std::string& line) {
    std::vector<double> out;
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
    return out;
}

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("eforce_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

}  // namespace

TEST_CASE("lorentz boosts one state onto a single csv row") {
    const Run r = run_cli("lorentz --u 0.6 --v 0 --x 0 --ct 1 --e 1 --e12 0");
    CHECK(r.code == 0);
    CHECK(r.out == "0.6,0.75,1.25,1.5625\n");
}

TEST_CASE("lorentz with zero boost echoes the state") {
    const Run r = run_cli("lorentz --u 0 --v 0.3 --x 1.5 --ct 2 --e 0.5 --e12 0.25");
    CHECK(r.code == 0);
    CHECK(r.out == "0.3,1.5,2,0.75\n");
}

TEST_CASE("lorentz rejects superluminal input naming the flag") {
    const fs::path err = scratch_dir() / "lorentz_err.txt";
    const Run r = run_cli("lorentz --u 1.0", err.string());
    CHECK(r.code == 1);
    CHECK(r.out.empty());
    const std::string diag = slurp(err);
    CHECK(diag.find("--u") != std::string::npos);
    CHECK(diag.find("superluminal") != std::string::npos);
}

TEST_CASE("shm defaults emit the sampled period with small residuals") {
    const Run r = run_cli("shm");
    CHECK(r.code == 0);
    const auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 1027);
    CHECK(ls[0].rfind("# cmd: eforce shm ", 0) == 0);
    CHECK(ls[1] == "t,x,e,F,Qe,el_residual");
    double el_max = 0.0;
    for (std::size_t i = 2; i < ls.size(); ++i) {
        const auto cells = row_cells(ls[i]);
        REQUIRE(cells.size() == 6);
        el_max = std::max(el_max, std::abs(cells[5]));
    }
    CHECK(el_max < 1e-5);

    // byte determinism of a repeated invocation
    CHECK(run_cli("shm").out == r.out);
}

TEST_CASE("shm with zero amplitude zeroes every dynamic column") {
    const Run r = run_cli("shm --x0 0 --samples-per-period 64");
    CHECK(r.code == 0);
    const auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 67);
    for (std::size_t i = 2; i < ls.size(); ++i) {
        const auto cells = row_cells(ls[i]);
        for (std::size_t c = 1; c < cells.size(); ++c) CHECK(cells[c] == 0.0);
    }
}

TEST_CASE("action from a quantum number reports the matching amplitude") {
    const Run r = run_cli("action --m 1 --omega 1 --n 1");
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("x0").get<double>() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(j.at("n_fit").get<double>() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(j.at("nearest_n").get<long>() == 1);
    CHECK(j.at("pdx").get<double>() > 0.0);
    CHECK(j.at("Fde_sign").get<int>() == -1);
    CHECK(j.at("Fde_abs").get<double>() ==
          doctest::Approx(j.at("pdx").get<double>()).epsilon(1e-9));
}

TEST_CASE("action refuses an amplitude and a quantum number together") {
    CHECK(run_cli("action --x0 1 --n 1").code == 1);
}

TEST_CASE("canon check reports residuals and brackets") {
    const Run r = run_cli("canon check");
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("el_residual_max").get<double>() < 1e-6);
    CHECK(j.at("hamilton_residual_max").get<double>() < 1e-6);
    CHECK(j.at("bracket_eF").get<double>() == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(j.at("bracket_qp").get<double>() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("sweep output is byte-identical for any worker count") {
    const std::string base =
        "bichro sweep --delta 40 --pi-pulse --vmin -2 --vmax 2 --steps 5 "
        "--transient 5 --averaging 10";
    const Run serial = run_cli(base + " --jobs 1");
    const Run par = run_cli(base + " --jobs 4");
    CHECK(serial.code == 0);
    CHECK(par.code == 0);
    CHECK(serial.out == par.out);

    const auto ls = lines_of(serial.out);
    REQUIRE(ls.size() > 12);
    // echo carries resolved data parameters only: no jobs, rabi made explicit
    CHECK(ls[0].rfind("# cmd: eforce bichro sweep --delta 40 --rabi 31.4159", 0) == 0);
    CHECK(ls[0].find("--jobs") == std::string::npos);
    int data_rows = 0;
    bool header_seen = false;
    for (const auto& l : ls) {
        if (l == "v,F_mean,F_spread") header_seen = true;
        else if (header_seen) ++data_rows;
    }
    CHECK(data_rows == 5);
}

TEST_CASE("sweep demands exactly one rabi specification") {
    const fs::path err = scratch_dir() / "sweep_err.txt";
    const Run none = run_cli("bichro sweep --delta 40", err.string());
    CHECK(none.code == 1);
    CHECK(slurp(err).find("--rabi or --pi-pulse") != std::string::npos);
    CHECK(run_cli("bichro sweep --delta 40 --rabi 10 --pi-pulse").code == 1);
}

TEST_CASE("config file fills parameters and flags override it") {
    const fs::path cfg = scratch_dir() / "sweep.cfg";
    {
        std::ofstream os(cfg);
        os << "# compact smoke sweep\n"
              "pi-pulse = true\n"
              "vmin = -1\n"
              "vmax = 1\n"
              "steps = 5\n"
              "transient = 2\n"
              "averaging = 4\n";
    }
    const Run r = run_cli("bichro sweep --config " + cfg.string() + " --steps 3");
    CHECK(r.code == 0);
    const auto ls = lines_of(r.out);
    CHECK(ls[0].find("--vmin -1 --vmax 1 --steps 3") != std::string::npos);
    int data_rows = 0;
    bool header_seen = false;
    for (const auto& l : ls) {
        if (l == "v,F_mean,F_spread") header_seen = true;
        else if (header_seen) ++data_rows;
    }
    CHECK(data_rows == 3);
}

TEST_CASE("unknown config keys are rejected with their location") {
    const fs::path cfg = scratch_dir() / "bad.cfg";
    {
        std::ofstream os(cfg);
        os << "omega = 2\nquux = 1\n";
    }
    const fs::path err = scratch_dir() / "cfg_err.txt";
    const Run r = run_cli("shm --config " + cfg.string(), err.string());
    CHECK(r.code == 1);
    const std::string diag = slurp(err);
    CHECK(diag.find("unknown config key 'quux'") != std::string::npos);
    CHECK(diag.find(":2") != std::string::npos);
}

TEST_CASE("gnuplot script rides along the csv") {
    const fs::path csv = scratch_dir() / "curve.csv";
    const Run r = run_cli("bichro sweep --delta 40 --pi-pulse --vmin -1 --vmax 1 --steps 3 "
                          "--transient 2 --averaging 4 --out " +
                          csv.string() + " --gnuplot");
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(fs::exists(csv));
    const fs::path gp = csv.string() + ".gp";
    REQUIRE(fs::exists(gp));
    const std::string script = slurp(gp);
    CHECK(script.find("filledcurves") != std::string::npos);
    CHECK(script.find(csv.string()) != std::string::npos);

    // asking for the script without a csv path fails before any data flows
    const Run bad = run_cli("shm --gnuplot");
    CHECK(bad.code == 1);
    CHECK(bad.out.empty());
}

TEST_CASE("unwritable output maps to the i/o exit code") {
    const fs::path err = scratch_dir() / "io_err.txt";
    const Run r = run_cli("shm --out /nonexistent-dir/x.csv", err.string());
    CHECK(r.code == 3);
    CHECK(slurp(err).find("i/o failure") != std::string::npos);
}

TEST_CASE("impossible integrator tolerances map to the numeric exit code") {
    const fs::path err = scratch_dir() / "num_err.txt";
    const Run r = run_cli(
        "bichro sweep --delta 40 --pi-pulse --vmin 0 --vmax 1 --steps 2 "
        "--transient 1 --averaging 1 --rtol 1e-300 --atol 1e-300",
        err.string());
    CHECK(r.code == 2);
    CHECK(slurp(err).find("numeric failure") != std::string::npos);
}

TEST_CASE("analyze recovers the integer ladder from a quantized curve") {
    const fs::path csv = scratch_dir() / "ladder.csv";
    {
        std::ofstream os(csv);
        os << "# rabi = 20\nv,F_mean\n";
        for (double v = 3.0; v <= 23.0 + 1e-9; v += 0.05) {
            double f = 0.0;
            for (int n = 1; n <= 4; ++n) {
                const double vn = 20.0 / n;
                const double z = (v - vn) / 0.25;
                f += 0.5 * n * std::exp(-0.5 * z * z);
            }
            os << v << ',' << f << '\n';
        }
    }
    const fs::path peaks = scratch_dir() / "ladder_peaks.csv";
    const Run r = run_cli("bichro analyze " + csv.string() + " --unit 0.5 --peaks-csv " +
                          peaks.string());
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("unit").get<double>() == 0.5);
    REQUIRE(j.at("peaks").size() == 4);
    std::vector<long> ns;
    for (const auto& p : j.at("peaks")) ns.push_back(p.at("n_nearest").get<long>());
    std::sort(ns.begin(), ns.end());
    CHECK(ns == std::vector<long>{1, 2, 3, 4});
    for (const auto& vf : j.at("velocity_fits")) {
        CHECK(vf.at("mismatch").get<double>() < 0.02);
    }
    for (const auto& pc : j.at("power_checks")) CHECK(pc.at("satisfied").get<bool>());

    const auto pls = lines_of(slurp(peaks));
    REQUIRE(pls.size() == 5);
    CHECK(pls[0] == "v_peak,F_peak,n,residual");
}

TEST_CASE("analyze propagates reader failures") {
    CHECK(run_cli("bichro analyze " + (scratch_dir() / "missing.csv").string()).code == 3);
    const fs::path bad = scratch_dir() / "bad.csv";
    {
        std::ofstream os(bad);
        os << "v,F_mean\n0,abc\n";
    }
    CHECK(run_cli("bichro analyze " + bad.string()).code == 1);
}

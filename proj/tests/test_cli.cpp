#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

struct CmdResult {
    int exit_code;
    std::string out;
};

CmdResult run_cli(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + std::string(SPINRES_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(std::move(cells));
    }
    return rows;
}

}  // namespace

TEST_CASE("gr emits the analytic table") {
    const CmdResult r = run_cli("gr --alpha 0.7 --lambda 1.0 --method analytic --r-max 10");
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 22);  // header + 21 rows
    CHECK(rows[0][0] == "r");
    // row r = 1
    CHECK(rows[12][0] == "1");
    CHECK(std::stod(rows[12][1]) == doctest::Approx(0.38092223820061755).epsilon(1e-10));
}

TEST_CASE("gr in the ferromagnet is a Kronecker delta") {
    const CmdResult r = run_cli("gr --alpha 0.5 --lambda 2.0 --method analytic --r-max 5");
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 12);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const int dist = std::stoi(rows[i][0]);
        const double g = std::stod(rows[i][1]);
        if (dist == 0)
            CHECK(g == doctest::Approx(-1.0));
        else
            CHECK(g == doctest::Approx(0.0));
    }
}

TEST_CASE("gr with an even finite chain exits with a configuration error") {
    const CmdResult r = run_cli("gr --alpha 0.7 --lambda 1.0 --method finite --chain-length 10");
    CHECK(r.exit_code == 2);
}

TEST_CASE("resource reports the frozen coherence plateau") {
    const CmdResult r =
        run_cli("resource --gamma 1 --resource coherence --method quadrature --r-max 12");
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 13);
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(std::stod(rows[i][1]) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("discord rows carry the optimal measurement label") {
    const CmdResult r =
        run_cli("resource --alpha 0.5 --lambda 2.0 --resource discord --r-max 10");
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 11);
    CHECK(rows[0][3] == "measurement");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(std::stod(rows[i][1]) <= 1e-9);
        CHECK(!rows[i][3].empty());
    }
}

TEST_CASE("degenerate sweep axis is rejected") {
    const CmdResult r = run_cli(
        "sweep --axis alpha --lo 0 --hi 1 --steps 1 --resource coherence --r-max 2");
    CHECK(r.exit_code == 2);
}

TEST_CASE("sweep output is deterministic under the worker pool") {
    const std::string args =
        "sweep --axis alpha --lo 0.3 --hi 2.7 --steps 7 --axis lambda --lo -1 --hi 1 "
        "--steps 5 --resource coherence --r-max 4";
    const CmdResult a = run_cli(args, "SPINRES_THREADS=4");
    const CmdResult b = run_cli(args, "SPINRES_THREADS=1");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    const auto rows = parse_csv(a.out);
    CHECK(rows.size() == 1 + 7 * 5 * 4);
}

TEST_CASE("sweep records per-point failures as empty cells") {
    // the analytic backend refuses critical-line points; lambda = 1.5 sits on
    // lambda_c1 for alpha = 0.5
    const CmdResult r = run_cli(
        "sweep --alpha 0.5 --axis lambda --lo 0.5 --hi 2.5 --steps 3 --method analytic "
        "--resource coherence --r-max 2");
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 7);
    bool saw_empty = false, saw_value = false;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i][2].empty())
            saw_empty = true;
        else
            saw_value = true;
    }
    CHECK(saw_empty);
    CHECK(saw_value);
}

TEST_CASE("diagnose labels the reference points") {
    const CmdResult sl1 = run_cli("diagnose --alpha 0.7 --lambda 1.0");
    CHECK(sl1.exit_code == 0);
    CHECK(sl1.out.find("\"SL-I\"") != std::string::npos);
    CHECK(sl1.out.find("Asymptotic") != std::string::npos);

    const CmdResult ferr = run_cli("diagnose --alpha 0.5 --lambda 2.0");
    CHECK(ferr.exit_code == 0);
    CHECK(ferr.out.find("Ferromagnetic") != std::string::npos);
    CHECK(ferr.out.find("\"Zero\"") != std::string::npos);

    const CmdResult topo = run_cli("diagnose --gamma 1 --delta -1 --lambda 1 --alpha 0.3");
    CHECK(topo.exit_code == 0);
    CHECK(topo.out.find("\"N=1\"") != std::string::npos);
    CHECK(topo.out.find("Frozen") != std::string::npos);
}

TEST_CASE("winding subcommand prints the sector") {
    const CmdResult r = run_cli("winding --gamma 1 --lambda 0 --alpha 0 --format csv");
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][0] == "1");
    CHECK(std::stod(rows[1][2]) <= 1e-6);
}

TEST_CASE("winding at a gap closing exits with a numerical error") {
    const CmdResult r = run_cli("winding --gamma 1 --lambda 1");
    CHECK(r.exit_code == 3);
}

TEST_CASE("config file fills unset flags and the command line wins") {
    const std::string path = "/tmp/spinres_cfg_test.json";
    {
        std::ofstream cfg(path);
        cfg << R"({"alpha": 0.5, "lambda": 1.0, "method": "analytic", "r-max": 2})";
    }
    const CmdResult merged = run_cli("gr --config " + path + " --alpha 0.7");
    CHECK(merged.exit_code == 0);
    const CmdResult direct = run_cli("gr --alpha 0.7 --lambda 1.0 --method analytic --r-max 2");
    CHECK(merged.out == direct.out);
    std::remove(path.c_str());
}

TEST_CASE("validate passes at defaults and honors forced tolerances") {
    const CmdResult ok = run_cli("validate --levels 9 11");
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("FAIL") == std::string::npos);

    const CmdResult forced = run_cli("validate --levels 9 --tol 0");
    CHECK(forced.exit_code == 1);
    CHECK(forced.out.find("FAIL") != std::string::npos);

    const CmdResult capacity = run_cli("validate --levels 15");
    CHECK(capacity.exit_code == 2);
}

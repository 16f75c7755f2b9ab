#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "json.hpp"
#include "qaa/ec3.hpp"

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(QAA_CLI_PATH) + " " + args + " 2>cli_stderr.tmp";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> data_rows(const std::string& csv) {
    std::vector<std::string> rows;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') rows.push_back(line);
    return rows;
}

double field(const std::string& row, int idx) {
    std::istringstream in(row);
    std::string cell;
    for (int i = 0; i <= idx; ++i) std::getline(in, cell, ',');
    return std::stod(cell);
}

}  // namespace

TEST_CASE("sweep writes the requested grid with provenance") {
    REQUIRE(run_cli("sweep --model lz --points 5 --levels 2 --out s5.csv") == 0);
    const std::string csv = slurp("s5.csv");
    CHECK(csv.rfind("# qaa", 0) == 0);
    CHECK(csv.find("# config: model=lz") != std::string::npos);
    const auto rows = data_rows(csv);
    REQUIRE(rows.size() == 6);  // header + 5 grid points
    CHECK(rows[0] == "param,E0,E1,gap,v10");
    CHECK(field(rows[1], 0) == 0.0);
    CHECK(field(rows[5], 0) == 1.0);
}

TEST_CASE("sweep defaults to a 101-point grid") {
    REQUIRE(run_cli("sweep --model lz --levels 2 --out s101.csv") == 0);
    CHECK(data_rows(slurp("s101.csv")).size() == 102);
}

TEST_CASE("reruns are byte-identical") {
    REQUIRE(run_cli("sweep --model ec3 --n 6 --alpha 0.62 --seed 7 --points 7 "
                    "--levels 3 --out rep.csv") == 0);
    const std::string csv1 = slurp("rep.csv");
    const std::string side1 = slurp("rep.json");
    REQUIRE(run_cli("sweep --model ec3 --n 6 --alpha 0.62 --seed 7 --points 7 "
                    "--levels 3 --out rep.csv") == 0);
    CHECK(slurp("rep.csv") == csv1);
    CHECK(slurp("rep.json") == side1);
    CHECK(!csv1.empty());
    CHECK(!side1.empty());
}

TEST_CASE("sweep sidecar carries config, minimum and version") {
    REQUIRE(run_cli("sweep --model lz --points 11 --levels 2 --out side.csv") == 0);
    const auto j = nlohmann::json::parse(slurp("side.json"));
    REQUIRE(j.contains("config"));
    REQUIRE(j.contains("min_gap"));
    REQUIRE(j.contains("version"));
    CHECK(j["config"]["points"] == "11");
    CHECK(std::abs(j["min_gap"]["param"].get<double>() - 0.5) <= 1e-3);
    CHECK(std::abs(j["min_gap"]["gap"].get<double>() - 0.2) <= 1e-6);  // 2b at b=0.1
}

TEST_CASE("config files feed flags and explicit flags win") {
    std::ofstream("cli_sweep.cfg") << "model=lz\npoints=9\nlevels=2\n";
    REQUIRE(run_cli("sweep --config cli_sweep.cfg --out cfg9.csv") == 0);
    CHECK(data_rows(slurp("cfg9.csv")).size() == 10);
    REQUIRE(run_cli("sweep --config cli_sweep.cfg --points 7 --out cfg7.csv") == 0);
    CHECK(data_rows(slurp("cfg7.csv")).size() == 8);
}

TEST_CASE("crossings reports the two-level minimum") {
    REQUIRE(run_cli("crossings --model lz --b 0.02 --points 41 --levels 2 "
                    "--out cross.csv") == 0);
    const auto j = nlohmann::json::parse(slurp("cross.json"));
    REQUIRE(j.contains("crossings"));
    REQUIRE(j["crossings"].size() == 1);
    const auto& c = j["crossings"][0];
    CHECK(std::abs(c["param_star"].get<double>() - 0.5) <= 1e-3);
    CHECK(std::abs(c["gap_star"].get<double>() - 0.04) <= 1e-5);
    CHECK(c["hamming_d"] == 1);
    CHECK(c["exact"] == false);
    CHECK(c["level_pair"][0] == 0);
    CHECK(c["level_pair"][1] == 1);
}

TEST_CASE("evolve writes one row per anneal time") {
    REQUIRE(run_cli("evolve --model lz --T-list 20,40 --out ev.csv") == 0);
    const std::string csv = slurp("ev.csv");
    const auto rows = data_rows(csv);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == "T,success_probability,residual_energy,norm_drift");
    CHECK(field(rows[1], 0) == 20.0);
    CHECK(field(rows[2], 0) == 40.0);
    const double p20 = field(rows[1], 1);
    const double p40 = field(rows[2], 1);
    CHECK(p20 > 0.0);
    CHECK(p40 <= 1.0 + 1e-12);
    CHECK(p40 >= p20);  // adiabaticity improves with time here

    REQUIRE(run_cli("evolve --model lz --T-list 20,40 --out ev2.csv") == 0);
    // identical bytes apart from the echoed output path
    CHECK(data_rows(slurp("ev2.csv")) == rows);
}

TEST_CASE("empty anneal-time list yields a header-only table") {
    REQUIRE(run_cli("evolve --model lz --out ev0.csv") == 0);
    const auto rows = data_rows(slurp("ev0.csv"));
    REQUIRE(rows.size() == 1);
    CHECK(rows[0] == "T,success_probability,residual_energy,norm_drift");
}

TEST_CASE("scale fits injected gap tables") {
    REQUIRE(run_cli("scale --inject 6:0.1,8:0.05,10:0.025,12:0.0125 --out fit.json") == 0);
    const auto j = nlohmann::json::parse(slurp("fit.json"));
    CHECK(j["fit"]["preferred"] == "exponential");
    const double rate = j["fit"]["exponential"]["rate"].get<double>();
    CHECK(std::abs(rate - std::log(2.0) / 2.0) <= 1e-9);
    CHECK(j["fit"]["sizes"].size() == 4);
    CHECK(!j.contains("points"));  // injected tables skip the per-size sweeps

    // fewer than four sizes cannot be fit
    CHECK(run_cli("scale --inject 6:0.1,8:0.05 --out bad.json") != 0);
}

TEST_CASE("ec3stats summarizes the ensemble") {
    REQUIRE(run_cli("ec3stats --n 4 --alphas 0.25 --instances 8 --seed 5 "
                    "--out stats.csv") == 0);
    const auto rows = data_rows(slurp("stats.csv"));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "alpha,P_sat,stderr,mean_max_distance_over_N");
    CHECK(field(rows[1], 0) == 0.25);
    CHECK(field(rows[1], 1) == 1.0);  // one clause over four variables
    CHECK(field(rows[1], 2) == 0.0);

    // geometry off leaves the distance column empty
    REQUIRE(run_cli("ec3stats --n 4 --alphas 0.25 --instances 8 --seed 5 "
                    "--no-geometry --out stats2.csv") == 0);
    const auto plain = data_rows(slurp("stats2.csv"));
    CHECK(plain[1].back() == ',');
}

TEST_CASE("instance files drive the annealing sweep") {
    const qaa::EC3Instance inst = qaa::random_ec3(6, 0.62, 33);
    qaa::save_ec3(inst, "cli_inst.txt");
    REQUIRE(run_cli("sweep --model ising-file --instance-file cli_inst.txt "
                    "--points 3 --levels 2 --out isf.csv") == 0);
    const auto rows = data_rows(slurp("isf.csv"));
    REQUIRE(rows.size() == 4);
    // s = 1 reproduces the clause-violation count of the best assignment
    int best = 1 << 20;
    for (std::uint32_t x = 0; x < 64; ++x) best = std::min(best, inst.cost(x));
    CHECK(field(rows[3], 1) == static_cast<double>(best));
}

TEST_CASE("bad invocations fail loudly") {
    CHECK(run_cli("sweep --model bogus --out x.csv") != 0);
    CHECK(run_cli("") != 0);                                   // a subcommand is required
    CHECK(run_cli("evolve --model lz --T-list 5,3 --out x.csv") != 0);  // not ascending
    CHECK(run_cli("sweep --model ec3 --n 40 --out x.csv") != 0);        // too many spins
    CHECK(run_cli("crossings --model lz --points 21 --levels 2") != 0);  // needs --out
}

TEST_CASE("omitting --out streams the table to stdout") {
    const std::string cmd =
        std::string(QAA_CLI_PATH) + " sweep --model lz --points 3 --levels 2 >cli_stdout.tmp 2>/dev/null";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    REQUIRE(WEXITSTATUS(status) == 0);
    const std::string out = slurp("cli_stdout.tmp");
    CHECK(out.rfind("# qaa", 0) == 0);
    CHECK(data_rows(out).size() == 4);
}

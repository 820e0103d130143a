#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include <sys/wait.h>

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing file: ", path);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    const std::string out_path = "cli_capture_" + std::to_string(counter++) + ".txt";
    const std::string cmd = std::string(QPOVM_CLI_PATH) + " " + args + " > " +
                            out_path + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    CliResult result;
    if (status != -1 && WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
    result.output = read_file(out_path);
    std::remove(out_path.c_str());
    return result;
}

std::string spec(const std::string& name) {
    return std::string(QPOVM_SPEC_DIR) + "/" + name;
}

std::string golden(const std::string& name) {
    return read_file(std::string(QPOVM_GOLDEN_DIR) + "/" + name);
}

} // namespace

TEST_CASE("golden: povm evolve with table check") {
    const CliResult r = run_cli("povm evolve --spec " + spec("depol_q03.json") +
                                " --theta 1.0 --table-check");
    CHECK(r.exit_code == 0);
    CHECK(r.output == golden("povm_depol_table.csv"));
}

TEST_CASE("golden: markov scan damped RTN") {
    const CliResult r =
        run_cli("markov scan --spec " + spec("rtn_damped.json") +
                " --theta 1.5707963267948966 --t-max 10 --steps 6");
    CHECK(r.exit_code == 0);
    CHECK(r.output == golden("markov_rtn_damped.csv"));
}

TEST_CASE("golden: energy sweep, point, trajectory") {
    CHECK(run_cli("energy sweep --grid 6").output ==
          golden("energy_sweep_grid6.csv"));
    CHECK(run_cli("energy point 0.5 0.5").output ==
          golden("energy_point_half.csv"));
    CHECK(run_cli("energy ad-trajectory 5.0 --t-max 10 --steps 5").output ==
          golden("energy_ad_trajectory.csv"));
}

TEST_CASE("golden: channel show json") {
    const CliResult r = run_cli("channel show --spec " +
                                spec("ad_gamma036.json") + " --format json");
    CHECK(r.exit_code == 0);
    CHECK(r.output == golden("channel_show_ad.json"));

    const nlohmann::json doc = nlohmann::json::parse(r.output);
    CHECK(doc.contains("kraus"));
    CHECK(doc.contains("mueller"));
    CHECK(doc.contains("diagnosis"));
    CHECK(doc["diagnosis"]["complete"].get<bool>());
    CHECK_FALSE(doc["diagnosis"]["unital"].get<bool>());
    CHECK(doc["mueller"][3][0].get<double>() == doctest::Approx(0.64));
}

TEST_CASE("channel show: fresh RTN is the identity map") {
    const CliResult r = run_cli("channel show --spec " +
                                spec("rtn_damped.json") +
                                " --time 0 --format json");
    REQUIRE(r.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(r.output);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(doc["mueller"][i][j].get<double>() ==
                  doctest::Approx(i == j ? 1.0 : 0.0).scale(1).epsilon(1e-12));
}

TEST_CASE("povm evolve: biased amplitude-damping readout with table check") {
    const CliResult r = run_cli("povm evolve --spec " + spec("ad_gamma036.json") +
                                " --theta 0 --table-check --format json");
    REQUIRE(r.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(r.output);
    CHECK(doc["bias"].get<double>() == doctest::Approx(0.64));
    CHECK(doc["sharpness"].get<double>() == doctest::Approx(0.36));
    CHECK(doc["closed_form_check"]["status"] == "informational");
    CHECK(doc["closed_form_check"]["bias_deviation"].get<double>() > 0.1);
}

TEST_CASE("repeated sweeps are byte-identical") {
    const std::string a = run_cli("energy sweep --grid 21").output;
    const std::string b = run_cli("energy sweep --grid 21").output;
    CHECK(a == b);
    CHECK(a.substr(0, a.find('\n')) == "x,lambda,delta_e_s,delta_s_m,e_cost");
}

TEST_CASE("exit code contract") {
    // Usage and spec problems: 2.
    CHECK(run_cli("energy point 0.7 0.5").exit_code == 2);
    CHECK(run_cli("povm evolve --spec no_such_file.json").exit_code == 2);
    CHECK(run_cli("nonsense-subcommand").exit_code == 2);
    CHECK(run_cli("markov scan --spec " + spec("rtn_damped.json") + " --steps 1")
              .exit_code == 2);

    std::ofstream bad("bad_spec.json");
    bad << "{\"kind\":\"pd\",\"lambda\":0.3,\"extra\":1}";
    bad.close();
    CHECK(run_cli("povm evolve --spec bad_spec.json").exit_code == 2);
    std::remove("bad_spec.json");

    // Physics validation failures: 3.
    CHECK(run_cli("channel show --spec " + spec("pd_lambda03.json") +
                  " --raw-kraus").exit_code == 3);

    // Witness verdicts are data, not errors: 0 in both regimes.
    CHECK(run_cli("markov scan --spec " + spec("rtn_oscillatory.json") +
                  " --theta 1.5707963267948966 --t-max 6 --steps 100")
              .exit_code == 0);

    // Help is not an error.
    CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("markov verdict lines") {
    const CliResult damped =
        run_cli("markov scan --spec " + spec("rtn_damped.json") +
                " --theta 1.5707963267948966 --t-max 10 --steps 200");
    CHECK(damped.output.find("verdict=monotone\n") != std::string::npos);

    const CliResult oscillatory =
        run_cli("markov scan --spec " + spec("rtn_oscillatory.json") +
                " --theta 1.5707963267948966 --t-max 6 --steps 600");
    CHECK(oscillatory.output.find("verdict=revivals:") != std::string::npos);
    CHECK(oscillatory.output.find("max_rise=") != std::string::npos);

    const CliResult constant =
        run_cli("markov scan --spec " + spec("pd_lambda03.json") +
                " --theta 0.7 --t-max 5 --steps 50");
    CHECK(constant.output.find("verdict=monotone\n") != std::string::npos);
}

TEST_CASE("ad trajectory rows stay on the x + lambda = 1 boundary") {
    const CliResult r = run_cli("energy ad-trajectory 5.0 --t-max 10 --steps 40");
    REQUIRE(r.exit_code == 0);
    std::istringstream lines(r.output);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "tau,G,x,lambda,e_cost");
    bool g_negative = false;
    while (std::getline(lines, line)) {
        double tau, g, x, lambda, cost;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &tau, &g, &x,
                            &lambda, &cost) == 5);
        CHECK(x + lambda == doctest::Approx(1.0).epsilon(1e-9));
        g_negative = g_negative || g < -0.05;
    }
    CHECK(g_negative);
}

TEST_CASE("selftest passes with an explicit seed") {
    const CliResult r = run_cli("selftest --seed 99");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("FAIL") == std::string::npos);
    CHECK(r.output.find("all properties hold") != std::string::npos);
}

TEST_CASE("energy point json mode and nats flag") {
    const CliResult bits = run_cli("energy point 0.5 0.5 --format json");
    REQUIRE(bits.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(bits.output);
    CHECK(doc["e_cost"].get<double>() == doctest::Approx(1.2516291673878228));
    CHECK(doc["entropy_units"] == "bits");

    const CliResult nats = run_cli("energy point 0.5 0.5 --format json --nats");
    const nlohmann::json doc2 = nlohmann::json::parse(nats.output);
    CHECK(doc2["entropy_units"] == "nats");
    CHECK(doc2["delta_s_m"].get<double>() ==
          doctest::Approx(0.9182958340544896 * 0.6931471805599453));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;
};

// Runs the installed binary with stdout captured; stderr passes through.
CliResult run_cli(const std::string& args) {
    const std::string out_path =
        (std::filesystem::temp_directory_path() / "twosq_cli_out.txt").string();
    const std::string cmd = std::string(TWOSQ_CLI_BIN) + " " + args + " > " + out_path;
    int status = std::system(cmd.c_str());

    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    result.output = buffer.str();
    std::filesystem::remove(out_path);
    return result;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("classify") {
    auto r = run_cli("classify 72 21");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "membership=N"));
    CHECK(contains(r.output, "witness=3^2"));

    r = run_cli("classify 8 5");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "membership=S"));

    r = run_cli("classify 1 0");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "membership=S"));

    CHECK(run_cli("classify 8 9").exit_code != 0);   // residue out of range
    CHECK(run_cli("classify 8").exit_code != 0);     // missing argument
    CHECK(run_cli("classify 0 0").exit_code != 0);
}

TEST_CASE("count and table") {
    auto r = run_cli("count 72");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "count_n=37"));
    CHECK(contains(r.output, "density_n=37/72"));
    CHECK(contains(r.output, "density_n_decimal=0.513889"));

    r = run_cli("count 8");
    CHECK(contains(r.output, "count_s=5"));

    r = run_cli("count 1");
    CHECK(contains(r.output, "count_s=1"));

    r = run_cli("--format csv table 6");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "n,count_s,count_n,density_s"));
    CHECK(contains(r.output, "4,3,1,3/4"));
}

TEST_CASE("oracle-check") {
    auto r = run_cli("oracle-check 64");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "result=all agree"));

    r = run_cli("oracle-check 1");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "result=all agree"));
}

TEST_CASE("asymptotics rows") {
    auto r = run_cli("--format csv asymptotics 2 2");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "i,s,density_n,density_n_decimal,limit,limit_decimal"));
    CHECK(contains(r.output, "1,1,0,0.000000,1/4,0.250000"));
    CHECK(contains(r.output, "1,2,2/9,0.222222,1/4,0.250000"));
    CHECK(contains(r.output, "2,2,140/441,0.317460,11/32,0.343750"));
}

TEST_CASE("search with exports and resume") {
    namespace fs = std::filesystem;
    const std::string cp = (fs::temp_directory_path() / "twosq_cli.checkpoint").string();
    const std::string csv = (fs::temp_directory_path() / "twosq_cli_rows.csv").string();
    const std::string members = (fs::temp_directory_path() / "twosq_cli_members.txt").string();
    fs::remove(cp);

    auto r = run_cli("search --limit 5000 --mode one-power --threads 2 --resume " + cp +
                     " --export-csv " + csv + " --export-members " + members);
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "command=search"));
    CHECK(contains(r.output, "best_n="));
    CHECK(fs::exists(cp));
    CHECK(fs::exists(csv));
    CHECK(fs::exists(members));

    // identical rerun from the completed checkpoint
    auto again = run_cli("search --limit 5000 --mode one-power --resume " + cp);
    CHECK(again.exit_code == 0);
    CHECK(contains(again.output, "best_n="));

    // checkpoint parameter mismatch is an error
    CHECK(run_cli("search --limit 6000 --mode one-power --resume " + cp).exit_code != 0);

    std::ifstream csv_in(csv);
    std::string header;
    std::getline(csv_in, header);
    CHECK(header == "n,k,m,count,density,density_decimal");

    // members file: first line is a valid member of the best set
    std::ifstream members_in(members);
    std::string first;
    CHECK(std::getline(members_in, first));
    CHECK_FALSE(first.empty());

    fs::remove(cp);
    fs::remove(csv);
    fs::remove(members);
}

TEST_CASE("certify-lift") {
    auto r = run_cli("certify-lift --n 72 --x 23 --mode one-power --samples 100");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "verdict=all-non-representable"));
    CHECK(contains(r.output, "counterexamples=0"));

    // 0 is representable, so it cannot be in any condition set
    CHECK(run_cli("certify-lift --n 72 --x 0 --mode one-power --samples 10").exit_code != 0);
    // n = 20 is not an admissible candidate (5 divides it)
    CHECK(run_cli("certify-lift --n 20 --x 3 --mode one-power --samples 10").exit_code != 0);
}

TEST_CASE("empty search results exit zero") {
    const std::string cp =
        (std::filesystem::temp_directory_path() / "twosq_cli_empty.checkpoint").string();
    std::filesystem::remove(cp);
    auto r = run_cli("search --limit 40 --mode one-power --resume " + cp);
    CHECK(r.exit_code == 0);  // an empty result is not an error
    CHECK(contains(r.output, "best=none"));
    std::filesystem::remove(cp);
}

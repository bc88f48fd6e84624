#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

// Exercises the built binary end to end: schemas, golden files,
// determinism, exit codes. Paths are injected by the build.

namespace {

std::string cli() { return BHT_CLI_PATH; }
std::string fixture(const std::string& name) {
    return std::string(BHT_TEST_DIR) + "/fixtures/" + name;
}
std::string golden(const std::string& name) {
    return std::string(BHT_TEST_DIR) + "/golden/" + name;
}

int run(const std::string& args) {
    int status = std::system((cli() + " " + args).c_str());
    return WEXITSTATUS(status);
}

int run_raw(const std::string& command) {
    int status = std::system(command.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::size_t column(const std::vector<std::vector<std::string>>& rows,
                   const std::string& name) {
    for (std::size_t c = 0; c < rows.at(0).size(); ++c)
        if (rows[0][c] == name) return c;
    REQUIRE(false);
    return 0;
}

}  // namespace

TEST_CASE("exact: golden file and byte-identical rerun") {
    std::string cmd = "exact --input " + fixture("bernoulli.json") +
                      " --epsilon 0.1,0.25,0.5 --output cli_exact_a.csv";
    REQUIRE(run(cmd) == 0);
    std::string first = slurp("cli_exact_a.csv");
    CHECK(first == slurp(golden("exact.csv")));
    REQUIRE(run("exact --input " + fixture("bernoulli.json") +
                " --epsilon 0.1,0.25,0.5 --output cli_exact_b.csv") == 0);
    CHECK(first == slurp("cli_exact_b.csv"));
}

TEST_CASE("exact: worked row and endpoint budgets") {
    REQUIRE(run("exact --input " + fixture("bernoulli.json") +
                " --epsilon 0,0.5,1 --output cli_exact_ends.csv") == 0);
    auto rows = parse_csv(slurp("cli_exact_ends.csv"));
    REQUIRE(rows.size() == 4);
    std::size_t beta_col = column(rows, "beta");
    CHECK(std::stod(rows[1][beta_col]) == doctest::Approx(1.0).epsilon(1e-12));  // eps = 0
    CHECK(std::stod(rows[2][beta_col]) == doctest::Approx(0.1).epsilon(1e-12));  // eps = 0.5
    CHECK(std::stod(rows[3][beta_col]) == 0.0);                                  // eps = 1
    std::size_t lambda_col = column(rows, "lambda");
    CHECK(std::stod(rows[2][lambda_col]) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("exact: CSV input gives the same bytes as JSON input") {
    REQUIRE(run("exact --input " + fixture("bernoulli.json") +
                " --epsilon 0.25 --output cli_in_json.csv") == 0);
    REQUIRE(run("exact --input " + fixture("bernoulli.csv") +
                " --epsilon 0.25 --output cli_in_csv.csv") == 0);
    CHECK(slurp("cli_in_json.csv") == slurp("cli_in_csv.csv"));
}

TEST_CASE("exact: json output parses and matches the csv numbers") {
    REQUIRE(run("exact --input " + fixture("bernoulli.json") +
                " --epsilon 0.5 --format json --output cli_exact.json") == 0);
    auto doc = nlohmann::json::parse(slurp("cli_exact.json"));
    REQUIRE(doc.is_array());
    REQUIRE(doc.size() == 1);
    CHECK(doc[0]["beta"].get<double>() == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(doc[0]["epsilon"].get<double>() == 0.5);
}

TEST_CASE("exact: --bits rescales the nat-valued columns only") {
    REQUIRE(run("exact --input " + fixture("bernoulli.json") +
                " --epsilon 0.5 --bits --format json --output cli_bits.json") == 0);
    auto doc = nlohmann::json::parse(slurp("cli_bits.json"));
    double log2beta = doc[0]["log_beta"].get<double>();
    CHECK(log2beta == doctest::Approx(std::log(0.1) / std::log(2.0)).epsilon(1e-12));
    CHECK(doc[0]["beta"].get<double>() == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("verify: clean pair exits 0, corrupted route exits 3") {
    CHECK(run("verify --input " + fixture("bernoulli.json") +
              " --output cli_verify.csv 2>/dev/null") == 0);
    CHECK(run("verify --input " + fixture("bernoulli.json") +
              " --corrupt-route --output cli_verify_bad.csv 2>/dev/null") == 3);
    auto rows = parse_csv(slurp("cli_verify.csv"));
    std::size_t disc = column(rows, "discrepancy");
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(std::stod(rows[i][disc]) <= 1e-9);
    // the hidden test hook stays out of the help text
    REQUIRE(run("verify --help > cli_help.txt") == 0);
    CHECK(slurp("cli_help.txt").find("corrupt-route") == std::string::npos);
}

TEST_CASE("renyi: golden file and dominance column") {
    REQUIRE(run("renyi --input " + fixture("bernoulli.json") +
                " --output cli_renyi.csv") == 0);
    CHECK(slurp("cli_renyi.csv") == slurp(golden("renyi.csv")));
    auto rows = parse_csv(slurp("cli_renyi.csv"));
    std::size_t dom = column(rows, "dominates");
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][dom] == "true");
}

TEST_CASE("gaussian: golden file, containment and degenerate marking") {
    REQUIRE(run("gaussian --input " + fixture("bernoulli.json") +
                " --n 16,64 --epsilon 0.1,0.25,0.5 --output cli_gaussian.csv") == 0);
    CHECK(slurp("cli_gaussian.csv") == slurp(golden("gaussian.csv")));
    auto rows = parse_csv(slurp("cli_gaussian.csv"));
    std::size_t contained = column(rows, "contained");
    std::size_t degenerate = column(rows, "degenerate");
    std::size_t n_col = column(rows, "n");
    std::size_t eps_col = column(rows, "epsilon");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        bool n16_eps01 = std::stod(rows[i][n_col]) == 16.0 &&
                         std::abs(std::stod(rows[i][eps_col]) - 0.1) < 1e-12;
        CHECK(rows[i][degenerate] == (n16_eps01 ? "true" : "false"));
        if (rows[i][degenerate] == "false") CHECK(rows[i][contained] == "true");
    }
}

TEST_CASE("exponent: golden file and sandwich ordering") {
    REQUIRE(run("exponent --input " + fixture("bernoulli.json") +
                " --r 0.05,0.1 --n 16,64 --output cli_exponent.csv") == 0);
    CHECK(slurp("cli_exponent.csv") == slurp(golden("exponent.csv")));
    auto rows = parse_csv(slurp("cli_exponent.csv"));
    std::size_t en = column(rows, "en_exact");
    std::size_t e2q = column(rows, "e2n_quadrature");
    std::size_t e2l = column(rows, "e2n_laplace");
    std::size_t status = column(rows, "status");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i][status] == "ok");
        // Chernoff side of the sandwich: E2n(r) <= En(r)
        CHECK(std::stod(rows[i][e2q]) <= std::stod(rows[i][en]) + 1e-9);
        CHECK(std::stod(rows[i][e2l]) <= std::stod(rows[i][en]) + 1e-9);
    }
}

TEST_CASE("exponent: r = 0 rows report R* = D") {
    REQUIRE(run("exponent --input " + fixture("bernoulli.json") +
                " --r 0 --n 16 --output cli_exponent0.csv") == 0);
    auto rows = parse_csv(slurp("cli_exponent0.csv"));
    std::size_t r_star = column(rows, "r_star");
    CHECK(std::stod(rows[1][r_star]) == doctest::Approx(std::log(5.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("exponent: atom cap from the environment is reported, not fatal") {
    int code = run_raw("BHT_ATOM_CAP=4 " + cli() + " exponent --input " +
                       fixture("bernoulli.json") + " --r 0.05 --n 64 --output cli_capped.csv");
    CHECK(code == 0);
    auto rows = parse_csv(slurp("cli_capped.csv"));
    std::size_t status = column(rows, "status");
    CHECK(rows[1][status] == "atom_cap_exceeded");
    std::size_t en = column(rows, "en_exact");
    CHECK(rows[1][en] == "nan");
    std::size_t e2q = column(rows, "e2n_quadrature");
    CHECK(rows[1][e2q] != "nan");  // the surrogate route needs no product
}

TEST_CASE("parse failures exit 2 with a diagnostic") {
    CHECK(run("exact --input " + fixture("broken.json") +
              " --output cli_broken.csv 2> cli_broken.err") == 2);
    CHECK(slurp("cli_broken.err").find("error") != std::string::npos);
    CHECK(run("exact --input " + fixture("does_not_exist.json") + " 2>/dev/null") == 2);
    CHECK(run("exact --input " + fixture("bernoulli.json") +
              " --epsilon nope 2>/dev/null") == 2);
}

TEST_CASE("domain failures exit 1") {
    // P = Q has zero LLR variance: the gaussian pipeline must refuse
    std::ofstream out("cli_pq.json");
    out << R"({"support": ["a", "b"], "p": [0.5, 0.5], "q": [0.5, 0.5]})";
    out.close();
    CHECK(run("gaussian --input cli_pq.json 2>/dev/null") == 1);
}

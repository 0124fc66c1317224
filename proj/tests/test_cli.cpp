#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#ifndef TAU_CLI_BIN
#error "TAU_CLI_BIN must point at the built binary"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(TAU_CLI_BIN) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    RunResult r{-1, {}};
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

struct TempDir {
    std::filesystem::path dir;
    TempDir() {
        dir = std::filesystem::temp_directory_path() /
              ("tau_cli_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(dir);
    }
    ~TempDir() { std::filesystem::remove_all(dir); }
    std::string operator/(const char* name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("coeff prints exact values") {
    CHECK(run("coeff 4").out == "-1472\n");
    CHECK(run("coeff 1").out == "1\n");
    CHECK(run("coeff 12").out == "-370944\n");
    CHECK(run("coeff 63001").out == "-80561663527802406257321747\n");
    CHECK(run("coeff 4").exit_code == 0);
}

TEST_CASE("parse failures exit with 2") {
    CHECK(run("coeff").exit_code == 2);
    CHECK(run("no-such-command").exit_code == 2);
    CHECK(run("scan --pmax").exit_code == 2);
}

TEST_CASE("computation errors exit with 1") {
    CHECK(run("coeff 0").exit_code == 1);
    CHECK(run("audit --example 99").exit_code == 1);
    CHECK(run("audit --example 41").exit_code == 1);  // gated behind --slow
}

TEST_CASE("series writes a loadable table") {
    TempDir tmp;
    RunResult r = run("series --limit 10 --out " + (tmp / "t.tsv"));
    CHECK(r.exit_code == 0);
    std::ifstream is(tmp / "t.tsv");
    std::string header;
    std::getline(is, header);
    CHECK(header == "# tau table weight=12 limit=10");
    // and coeff can consume it
    CHECK(run("coeff 6 --table " + (tmp / "t.tsv")).out == "-6048\n");
}

TEST_CASE("scan record stream") {
    RunResult empty = run("scan --pmax 10 --exps 3");
    CHECK(empty.exit_code == 0);
    CHECK(empty.out.empty());

    RunResult four = run("scan --pmax 1000 --exps 3");
    CHECK(four.exit_code == 0);
    CHECK(count_lines(four.out) == 4);
    // first record parses and matches the Lehmer entry
    nlohmann::json j = nlohmann::json::parse(four.out.substr(0, four.out.find('\n')));
    CHECK(j["p"] == 251);
    CHECK(j["digit_count"] == 26);
    CHECK(j["primality"] == "probable_prime");

    RunResult parallel = run("scan --pmax 1000 --exps 3 --workers 4");
    CHECK(parallel.out == four.out);

    RunResult csv = run("scan --pmax 1000 --exps 3 --format csv");
    CHECK(csv.out.rfind("p,two_n,value_sign,digit_count,primality,value_hash\n", 0) == 0);
    CHECK(count_lines(csv.out) == 5);
}

TEST_CASE("scan resume honors the checkpoint contract") {
    TempDir tmp;
    const std::string base = "scan --pmax 1000 --exps 3 --out " + (tmp / "r.jsonl") +
                             " --checkpoint " + (tmp / "r.ck");
    CHECK(run(base).exit_code == 0);
    std::ifstream is(tmp / "r.jsonl");
    std::string all((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    CHECK(count_lines(all) == 4);

    // resuming a finished run appends nothing
    CHECK(run(base + " --resume").exit_code == 0);
    std::ifstream is2(tmp / "r.jsonl");
    std::string again((std::istreambuf_iterator<char>(is2)), std::istreambuf_iterator<char>());
    CHECK(again == all);

    // a changed configuration must be refused with exit 3
    RunResult bad = run("scan --pmax 2000 --exps 3 --out " + (tmp / "r.jsonl") +
                        " --checkpoint " + (tmp / "r.ck") + " --resume");
    CHECK(bad.exit_code == 3);
}

TEST_CASE("audit verdicts and exit codes") {
    RunResult t1 = run("audit --table1");
    CHECK(t1.exit_code == 0);
    CHECK(count_lines(t1.out) == 7);  // config header + six rows

    RunResult c2 = run("audit --case2 --qbound 8.0e25");
    CHECK(c2.exit_code == 0);
    CHECK(c2.out.find("2.5231e+31") != std::string::npos);

    // an asserted failure lists the failure and exits 4
    RunResult fail = run("audit --case2 --qbound 1.0e40");
    CHECK(fail.exit_code == 4);
    CHECK(fail.out.find("FAILS") != std::string::npos);

    RunResult ex = run("audit --example 157");
    CHECK(ex.exit_code == 0);
    CHECK(ex.out.find("26643 digits") != std::string::npos);

    RunResult sand = run("audit --sandwich --p 251 --two-n 2");
    CHECK(sand.exit_code == 0);

    RunResult chain = run("audit --chain --p 2 --two-n 1994");
    CHECK(chain.exit_code == 0);
    CHECK(chain.out.find("[ratio<6]") != std::string::npos);
}

TEST_CASE("audit json format is line-delimited with a config header") {
    RunResult r = run("audit --case2 --qbound 8.0e25 --format json");
    CHECK(r.exit_code == 0);
    std::istringstream is(r.out);
    std::string line;
    REQUIRE(std::getline(is, line));
    CHECK(nlohmann::json::parse(line).contains("config"));
    REQUIRE(std::getline(is, line));
    nlohmann::json rec = nlohmann::json::parse(line);
    CHECK(rec.contains("label"));
    CHECK(rec.contains("lhs_log10"));
    CHECK(rec.contains("rhs_log10"));
    CHECK(rec.contains("holds"));
    CHECK(rec.contains("slack_log10"));
}

TEST_CASE("cf emits exact JSON and audits cleanly") {
    RunResult r = run("cf --x golden --count 20 --prec 256");
    CHECK(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out.substr(0, r.out.find('\n')));
    REQUIRE(j["quotients"].size() == 20);
    for (const auto& q : j["quotients"]) CHECK(q == "1");
    CHECK(j["truncated"] == false);

    CHECK(run("cf --x sqrt2 --count 30 --prec 512 --audit").exit_code == 0);
    CHECK(run("cf --x 7/3").out.find("\"quotients\":[\"2\",\"3\"]") != std::string::npos);
}

TEST_CASE("matveev evaluator output") {
    RunResult base = run("matveev --base-factor --d 2 --k 2");
    CHECK(base.exit_code == 0);
    CHECK(base.out.find("5.213435e+09") != std::string::npos);

    RunResult full = run("matveev --d 2 --k 2 --B 2 --A 1,1");
    CHECK(full.exit_code == 0);
    CHECK(full.out.find("8.827113e+09") != std::string::npos);

    RunResult both = run("matveev --tau-p 2 --n 100");
    CHECK(both.exit_code == 0);
    CHECK(both.out.find("not reconciled") != std::string::npos);
}

TEST_CASE("config file feeds defaults, flags win") {
    TempDir tmp;
    {
        std::ofstream os(tmp / "tau.ini");
        os << "[scan]\npmax=1000\nexps=3\n";
    }
    RunResult from_file = run("--config " + (tmp / "tau.ini") + " scan");
    CHECK(from_file.exit_code == 0);
    CHECK(count_lines(from_file.out) == 4);
    // explicit flag overrides the file value
    RunResult flag_wins = run("--config " + (tmp / "tau.ini") + " scan --pmax 300");
    CHECK(count_lines(flag_wins.out) == 1);
}

TEST_CASE("verify-theorem combined verdict") {
    RunResult r = run("verify-theorem --pmax 300 --exps 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("case I") != std::string::npos);
    CHECK(r.out.find("case II") != std::string::npos);
    CHECK(r.out.find("smallest prime value found: -80561663527802406257321747") !=
          std::string::npos);
    CHECK(r.out.find("combined verdict: no prime q <= qbound is attained") != std::string::npos);
}

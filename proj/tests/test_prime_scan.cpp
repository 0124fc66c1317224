#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tau/analytic.hpp"
#include "tau/prime_scan.hpp"
#include "test_support.hpp"

using namespace tau;

namespace {

std::vector<ScanRecord> collect(const ScanConfig& cfg, const CoeffTable* table = nullptr) {
    std::vector<ScanRecord> out;
    scan_prime_values(cfg, table, [&](const ScanRecord& r, const Int&) { out.push_back(r); });
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream is(path);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

struct TempDir {
    std::filesystem::path dir;
    TempDir() {
        dir = std::filesystem::temp_directory_path() /
              ("tau_scan_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(dir);
    }
    ~TempDir() { std::filesystem::remove_all(dir); }
    std::string operator/(const char* name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("is_probable_prime basics") {
    CHECK(is_probable_prime(Int(0)) == Primality::composite);
    CHECK(is_probable_prime(Int(1)) == Primality::composite);
    CHECK(is_probable_prime(Int(2)) == Primality::proven_prime);
    CHECK(is_probable_prime(Int(997)) == Primality::proven_prime);
    CHECK(is_probable_prime(Int(561)) == Primality::composite);   // Carmichael
    CHECK(is_probable_prime(Int(2047)) == Primality::composite);  // 2-SPP, 23*89
    CHECK(is_probable_prime(Int("80561663527802406257321747")) == Primality::probable_prime);
    // 2^127 - 1, prime but above the proven range
    CHECK(is_probable_prime(Int("170141183460469231731687303715884105727")) ==
          Primality::probable_prime);
    // product of the Mersenne primes 2^89-1 and 2^107-1
    CHECK(is_probable_prime(Int("618970019642690137449562111") *
                            Int("162259276829213363391578010288127")) == Primality::composite);
    // perfect square of a large prime
    Int m127("170141183460469231731687303715884105727");
    CHECK(is_probable_prime(m127 * m127) == Primality::composite);
}

TEST_CASE("composite verdicts agree with trial division below 10^6") {
    // sieve oracle
    std::vector<bool> sieve(1000001, true);
    sieve[0] = sieve[1] = false;
    for (unsigned long i = 2; i * i <= 1000000; ++i)
        if (sieve[i])
            for (unsigned long j = i * i; j <= 1000000; j += i) sieve[j] = false;
    for (unsigned long n = 0; n <= 1000000; ++n) {
        bool prime = is_probable_prime(Int(static_cast<long>(n))) != Primality::composite;
        REQUIRE(prime == sieve[n]);
    }
}

TEST_CASE("scan finds the four square hits below 1000") {
    ScanConfig cfg;
    cfg.p_max = 1000;
    cfg.exponent_primes = {3};
    auto records = collect(cfg);
    REQUIRE(records.size() == 4);
    const unsigned long expect_p[] = {251, 677, 971, 983};
    const std::size_t expect_digits[] = {26, 32, 33, 33};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(records[i].p == expect_p[i]);
        CHECK(records[i].two_n == 2);
        CHECK(records[i].digit_count == expect_digits[i]);
        CHECK(records[i].value_sign == -1);
        CHECK(records[i].primality == Primality::probable_prime);
    }
}

TEST_CASE("scan finds the two fourth-power hits below 200") {
    ScanConfig cfg;
    cfg.p_max = 200;
    cfg.exponent_primes = {5};
    auto records = collect(cfg);
    REQUIRE(records.size() == 2);
    CHECK(records[0].p == 47);
    CHECK(records[0].digit_count == 37);
    CHECK(records[0].value_sign == 1);
    CHECK(records[1].p == 197);
    CHECK(records[1].digit_count == 50);
    CHECK(records[1].value_sign == -1);
}

TEST_CASE("scan on a tiny range is empty but accounted") {
    ScanConfig cfg;
    cfg.p_max = 10;
    cfg.exponent_primes = {3};
    ScanSummary s = scan_prime_values(cfg, nullptr, {});
    CHECK(s.records_emitted == 0);
    CHECK(s.primes_scanned == 4);     // 2, 3, 5, 7
    CHECK(s.candidates_tested == 4);  // one exponent each
    REQUIRE(s.structurally_excluded.size() == 1);
    CHECK(s.structurally_excluded[0] == 2);  // scanned, provably even, excluded
}

TEST_CASE("record stream is identical for any worker count") {
    ScanConfig cfg;
    cfg.p_max = 500;
    cfg.exponent_primes = {3, 5};
    auto render = [&](unsigned workers) {
        ScanConfig c = cfg;
        c.workers = workers;
        std::string all;
        scan_prime_values(c, nullptr, [&](const ScanRecord& r, const Int&) {
            all += r.to_json(false);
            all += '\n';
        });
        return all;
    };
    std::string one = render(1);
    CHECK(one == render(4));
    CHECK(one == render(13));
}

TEST_CASE("scan-space soundness: emitted values are odd, exponents have prime 2n+1") {
    ScanConfig cfg;
    cfg.p_max = 1000;
    cfg.exponent_primes = {3, 5};
    scan_prime_values(cfg, nullptr, [&](const ScanRecord& r, const Int& v) {
        REQUIRE(tau_test::is_prime_trial(r.two_n + 1));
        REQUIRE(mpz_odd_p(v.get_mpz_t()));
        REQUIRE(r.p % 2 == 1);
        REQUIRE(r.digit_count == digit_count(v));
        REQUIRE(r.value_hash == fnv1a64_hex(v.get_str()));
    });
}

TEST_CASE("scan config validation") {
    ScanConfig cfg;
    cfg.exponent_primes = {4};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.exponent_primes = {9};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.exponent_primes = {2};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.exponent_primes = {3};
    CHECK_NOTHROW(cfg.validate());

    CoeffTable small = delta_series(100);
    ScanConfig big;
    big.p_max = 1000;
    big.exponent_primes = {3};
    CHECK_THROWS_AS(scan_prime_values(big, &small, {}), std::invalid_argument);
}

TEST_CASE("checkpointed stream resumes record-for-record") {
    TempDir tmp;
    ScanConfig cfg;
    cfg.p_max = 1000;
    cfg.exponent_primes = {3};

    StreamOptions full;
    full.out_path = tmp / "full.jsonl";
    full.checkpoint_path = tmp / "full.ck";
    ScanSummary s_full = scan_to_stream(cfg, nullptr, full);
    CHECK(s_full.records_emitted == 4);

    // Simulate a crash after p = 677 (two records emitted, a stray partial
    // line already written for a later prime).
    StreamOptions broken = full;
    broken.out_path = tmp / "resumed.jsonl";
    broken.checkpoint_path = tmp / "resumed.ck";
    scan_to_stream(cfg, nullptr, broken);  // produce a complete file first
    {
        std::istringstream is(slurp(broken.out_path));
        std::string l1, l2;
        std::getline(is, l1);
        std::getline(is, l2);
        std::ofstream os(broken.out_path, std::ios::trunc);
        os << l1 << '\n' << l2 << '\n' << "{\"p\":971,\"partial\":" << '\n';
        std::ofstream ck(broken.checkpoint_path, std::ios::trunc);
        ck << ScanCheckpoint{cfg.digest(), 677, 2}.to_json() << '\n';
    }
    StreamOptions resume = broken;
    resume.resume = true;
    ScanSummary s_res = scan_to_stream(cfg, nullptr, resume);
    CHECK(s_res.records_emitted == 4);
    CHECK(slurp(resume.out_path) == slurp(full.out_path));

    // Refusing to resume under a changed configuration is mandatory.
    ScanConfig other = cfg;
    other.p_max = 2000;
    StreamOptions bad = resume;
    CHECK_THROWS_AS(scan_to_stream(other, nullptr, bad), CheckpointMismatch);
}

TEST_CASE("csv stream resume keeps the header line intact") {
    TempDir tmp;
    ScanConfig cfg;
    cfg.p_max = 1000;
    cfg.exponent_primes = {3};

    StreamOptions opts;
    opts.format = StreamFormat::csv;
    opts.out_path = tmp / "s.csv";
    opts.checkpoint_path = tmp / "s.ck";
    scan_to_stream(cfg, nullptr, opts);
    const std::string full = slurp(opts.out_path);

    {
        std::ofstream ck(opts.checkpoint_path, std::ios::trunc);
        ck << ScanCheckpoint{cfg.digest(), 677, 2}.to_json() << '\n';
    }
    StreamOptions resume = opts;
    resume.resume = true;
    scan_to_stream(cfg, nullptr, resume);
    CHECK(slurp(opts.out_path) == full);
    CHECK(full.rfind(ScanRecord::csv_header(false) + "\n", 0) == 0);
}

TEST_CASE("verify_case_I") {
    ScanConfig cfg;
    cfg.p_max = 1000;
    cfg.exponent_primes = {3};
    SUBCASE("holds at the published bound, minimum is the Lehmer value") {
        Int min_found;
        BoundReport r = verify_case_I(cfg, nullptr, default_q_bound(), &min_found);
        CHECK(r.holds);
        CHECK(min_found == Int("-80561663527802406257321747"));
    }
    SUBCASE("fails at 10^26 since the Lehmer value is below it") {
        BoundReport r = verify_case_I(cfg, nullptr, pow_ui(10, 26));
        CHECK_FALSE(r.holds);
    }
    SUBCASE("vacuously true on an empty range") {
        ScanConfig tiny;
        tiny.p_max = 10;
        tiny.exponent_primes = {3};
        CHECK(verify_case_I(tiny, nullptr, default_q_bound()).holds);
    }
}

TEST_CASE("verify_case_II") {
    const Int X600 = pow_ui(10, 600);
    SUBCASE("the published comparison holds") {
        BoundReport r = verify_case_II(default_q_bound(), X600);
        CHECK(r.holds);
        CHECK(r.label.find("2.5231e+31") != std::string::npos);
    }
    SUBCASE("equality at the threshold is not strict excess") {
        Int threshold = explicit_lower_bound_conservative(X600);
        CHECK(threshold == Int("25231134911761774155441593551801"));
        CHECK_FALSE(verify_case_II(threshold, X600).holds);
        CHECK(verify_case_II(threshold - 1, X600).holds);
    }
    SUBCASE("smallest power of ten beating 8e25 is 10^170") {
        unsigned long e = 100;
        while (!verify_case_II(default_q_bound(), pow_ui(10, e)).holds) ++e;
        CHECK(e == 170);
    }
}

TEST_CASE("parity law") {
    SUBCASE("N = 1") { CHECK(parity_check(1).holds); }
    SUBCASE("N = 100 with the known odd positions") {
        CoeffTable t = delta_series(100);
        CHECK(parity_check(t).holds);
        std::vector<long> odd;
        for (long n = 1; n <= 100; ++n)
            if (mpz_odd_p(t.at(n).get_mpz_t())) odd.push_back(n);
        CHECK(odd == std::vector<long>{1, 9, 25, 49, 81});
    }
    SUBCASE("N = 2000") { CHECK(parity_check(2000).holds); }
}

TEST_CASE("table 1 reproduction") {
    auto records = table1_reproduce();
    REQUIRE(records.size() == 6);
    const std::size_t digits[] = {26, 32, 33, 33, 37, 50};
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(records[i].digit_count == digits[i]);
        CHECK(records[i].primality == Primality::probable_prime);
    }
    CHECK(records[0].p == 251);
    CHECK(records[0].value_sign == -1);
    CHECK(records[0].value_decimal == "-80561663527802406257321747");
    CHECK(records[4].p == 47);
    CHECK(records[4].value_sign == 1);
}

TEST_CASE("scan record serialization") {
    ScanConfig cfg;
    cfg.p_max = 300;
    cfg.exponent_primes = {3};
    cfg.keep_values = true;
    auto records = collect(cfg);
    REQUIRE(records.size() == 1);
    const ScanRecord& r = records[0];

    std::string j = r.to_json(true);
    CHECK(j.find("\"p\":251") != std::string::npos);
    CHECK(j.find("\"two_n\":2") != std::string::npos);
    CHECK(j.find("\"primality\":\"probable_prime\"") != std::string::npos);
    CHECK(j.find("\"value\":\"-80561663527802406257321747\"") != std::string::npos);
    CHECK(r.to_json(false).find("\"value\"") == std::string::npos);

    CHECK(ScanRecord::csv_header(false) == "p,two_n,value_sign,digit_count,primality,value_hash");
    CHECK(r.to_csv(false).find("251,2,-1,26,probable_prime,") == 0);
}

TEST_CASE("config digest tracks the scanned space") {
    ScanConfig a, b;
    CHECK(a.digest() == b.digest());
    b.p_max = 4000;
    CHECK(a.digest() != b.digest());
    b = a;
    b.exponent_primes = {3, 5};
    CHECK(a.digest() != b.digest());
    b = a;
    b.workers = 7;  // workers never change the stream
    CHECK(a.digest() == b.digest());
}

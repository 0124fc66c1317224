#include "tau/prime_scan.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "tau/analytic.hpp"

namespace tau {

std::string ScanRecord::to_json(bool full_values) const {
    nlohmann::json j{{"p", p},
                     {"two_n", two_n},
                     {"value_sign", value_sign},
                     {"digit_count", digit_count},
                     {"primality", to_string(primality)},
                     {"value_hash", value_hash}};
    if (full_values) j["value"] = value_decimal;
    return j.dump();
}

std::string ScanRecord::csv_header(bool full_values) {
    std::string h = "p,two_n,value_sign,digit_count,primality,value_hash";
    if (full_values) h += ",value";
    return h;
}

std::string ScanRecord::to_csv(bool full_values) const {
    std::ostringstream os;
    os << p << ',' << two_n << ',' << value_sign << ',' << digit_count << ','
       << to_string(primality) << ',' << value_hash;
    if (full_values) os << ',' << value_decimal;
    return os.str();
}

std::string ScanRecord::to_text() const {
    std::ostringstream os;
    os << "tau(" << p << "^" << two_n << "): " << (value_sign < 0 ? '-' : '+') << ", "
       << digit_count << " digits, " << to_string(primality);
    return os.str();
}

void ScanConfig::validate() const {
    if (p_max < 2) throw std::invalid_argument("scan: p_max must be >= 2");
    if (exponent_primes.empty()) throw std::invalid_argument("scan: no exponent primes given");
    for (unsigned long e : exponent_primes)
        if (e < 3 || e % 2 == 0 || !is_prime_u64(e))
            throw std::invalid_argument("scan: exponents must be odd primes (got " +
                                        std::to_string(e) + ")");
}

std::string ScanConfig::digest() const {
    std::string s = "pmax=" + std::to_string(p_max) + ";exps=";
    for (unsigned long e : exponent_primes) s += std::to_string(e) + ",";
    s += ";values=" + std::to_string(keep_values ? 1 : 0);
    return fnv1a64_hex(s);
}

namespace {

std::vector<unsigned long> primes_up_to(unsigned long n) {
    std::vector<bool> sieve(n + 1, true);
    std::vector<unsigned long> primes;
    for (unsigned long i = 2; i <= n; ++i) {
        if (!sieve[i]) continue;
        primes.push_back(i);
        for (unsigned long j = i * i; j <= n; j += i) sieve[j] = false;
    }
    return primes;
}

struct PrimeResult {
    unsigned long candidates = 0;
    bool excluded_even = false;
    std::vector<std::pair<ScanRecord, Int>> hits;
};

PrimeResult scan_one_prime(unsigned long p, const Int& tau_p,
                           const std::vector<unsigned long>& exponents, bool keep_values) {
    PrimeResult out;
    for (unsigned long e : exponents) {
        const unsigned long two_n = e - 1;
        Int v = coeff_prime_power(tau_p, PrimePower(p, two_n));
        ++out.candidates;
        if (p == 2) {
            // tau(2^k) inherits the factor 2 of tau(2); no odd value possible.
            out.excluded_even = true;
            continue;
        }
        Int av = abs(v);
        Primality verdict = is_probable_prime(av);
        if (verdict == Primality::composite) continue;
        ScanRecord rec;
        rec.p = p;
        rec.two_n = two_n;
        rec.value_sign = sgn(v) < 0 ? -1 : 1;
        std::string dec = v.get_str();
        rec.digit_count = dec.size() - (rec.value_sign < 0 ? 1 : 0);
        rec.primality = verdict;
        rec.value_hash = fnv1a64_hex(dec);
        if (keep_values) rec.value_decimal = dec;
        out.hits.emplace_back(std::move(rec), std::move(v));
    }
    return out;
}

}  // namespace

ScanSummary scan_prime_values(const ScanConfig& cfg, const CoeffTable* table,
                              const ScanEmit& emit, unsigned long start_after_p,
                              const PrimeDone& prime_done) {
    cfg.validate();
    auto exponents = cfg.exponent_primes;
    std::sort(exponents.begin(), exponents.end());
    exponents.erase(std::unique(exponents.begin(), exponents.end()), exponents.end());

    CoeffTable local;
    if (table == nullptr) {
        local = delta_series(static_cast<long>(cfg.p_max));
        table = &local;
    } else if (table->limit() < static_cast<long>(cfg.p_max)) {
        throw std::invalid_argument("scan: coefficient table limit " +
                                    std::to_string(table->limit()) + " below p_max " +
                                    std::to_string(cfg.p_max));
    }

    std::vector<unsigned long> primes = primes_up_to(cfg.p_max);
    std::erase_if(primes, [&](unsigned long p) { return p <= start_after_p; });

    const unsigned workers = cfg.workers == 0
                                 ? std::max(1u, std::thread::hardware_concurrency())
                                 : cfg.workers;

    ScanSummary summary;
    summary.min_value_abs = 0;

    std::vector<std::optional<PrimeResult>> results(primes.size());
    std::mutex mu;
    std::condition_variable cv;
    std::atomic<std::size_t> next{0};

    auto work = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= primes.size()) return;
            PrimeResult r = scan_one_prime(primes[i], table->at(static_cast<long>(primes[i])),
                                           exponents, cfg.keep_values);
            {
                std::lock_guard<std::mutex> lk(mu);
                results[i] = std::move(r);
            }
            cv.notify_all();
        }
    };

    std::vector<std::thread> pool;
    struct Joiner {
        std::vector<std::thread>& ts;
        ~Joiner() {
            for (auto& t : ts)
                if (t.joinable()) t.join();
        }
    } joiner{pool};
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);

    // The calling thread is the ordered emitter.
    for (std::size_t i = 0; i < primes.size(); ++i) {
        std::unique_lock<std::mutex> lk(mu);
        cv.wait(lk, [&] { return results[i].has_value(); });
        PrimeResult r = std::move(*results[i]);
        results[i].reset();
        lk.unlock();

        summary.primes_scanned += 1;
        summary.candidates_tested += r.candidates;
        if (r.excluded_even) summary.structurally_excluded.push_back(primes[i]);
        for (auto& [rec, value] : r.hits) {
            Int av = abs(value);
            if (summary.records_emitted == 0 || av < summary.min_value_abs)
                summary.min_value_abs = av;
            summary.records_emitted += 1;
            if (emit) emit(rec, value);
        }
        if (prime_done) prime_done(primes[i], summary.records_emitted);
    }
    return summary;
}

std::string ScanCheckpoint::to_json() const {
    nlohmann::json j{{"config_digest", config_digest},
                     {"last_completed_p", last_completed_p},
                     {"records_emitted", records_emitted}};
    return j.dump();
}

ScanCheckpoint ScanCheckpoint::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ScanCheckpoint c;
    c.config_digest = j.at("config_digest").get<std::string>();
    c.last_completed_p = j.at("last_completed_p").get<unsigned long>();
    c.records_emitted = j.at("records_emitted").get<unsigned long>();
    return c;
}

namespace {

void write_checkpoint_atomic(const std::string& path, const ScanCheckpoint& cp) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::trunc);
        os << cp.to_json() << '\n';
    }
    std::filesystem::rename(tmp, path);
}

// Keep only the first `lines` content lines (after `header_lines`).
void truncate_to_lines(const std::string& path, std::size_t header_lines, std::size_t lines) {
    std::ifstream is(path);
    std::vector<std::string> kept;
    std::string line;
    while (std::getline(is, line) && kept.size() < header_lines + lines) kept.push_back(line);
    is.close();
    std::ofstream os(path, std::ios::trunc);
    for (const auto& l : kept) os << l << '\n';
}

std::string format_record(const ScanRecord& rec, const StreamOptions& opts) {
    switch (opts.format) {
        case StreamFormat::jsonl: return rec.to_json(opts.full_values);
        case StreamFormat::csv: return rec.to_csv(opts.full_values);
        case StreamFormat::text: return rec.to_text();
    }
    return {};
}

}  // namespace

ScanSummary scan_to_stream(const ScanConfig& cfg, const CoeffTable* table,
                           const StreamOptions& opts) {
    cfg.validate();
    const bool to_file = !opts.out_path.empty();
    const bool checkpointing = to_file && !opts.checkpoint_path.empty();
    if (opts.resume && !checkpointing)
        throw std::invalid_argument("scan: --resume needs both an output file and a checkpoint");

    ScanConfig effective = cfg;
    effective.keep_values = cfg.keep_values || opts.full_values;

    unsigned long start_after = 0;
    unsigned long base_records = 0;
    const std::size_t header_lines = opts.format == StreamFormat::csv ? 1 : 0;

    if (opts.resume) {
        std::ifstream is(opts.checkpoint_path);
        if (!is) throw CheckpointMismatch("scan: checkpoint not found: " + opts.checkpoint_path);
        std::stringstream buf;
        buf << is.rdbuf();
        ScanCheckpoint cp = ScanCheckpoint::from_json(buf.str());
        if (cp.config_digest != effective.digest())
            throw CheckpointMismatch("scan: checkpoint config digest mismatch (have " +
                                     cp.config_digest + ", want " + effective.digest() + ")");
        start_after = cp.last_completed_p;
        base_records = cp.records_emitted;
        truncate_to_lines(opts.out_path, header_lines, base_records);
    }

    std::ofstream file;
    if (to_file) {
        file.open(opts.out_path, opts.resume ? std::ios::app : std::ios::trunc);
        if (!file) throw std::runtime_error("scan: cannot open output: " + opts.out_path);
        if (!opts.resume && opts.format == StreamFormat::csv)
            file << ScanRecord::csv_header(opts.full_values) << '\n';
    } else if (opts.format == StreamFormat::csv) {
        std::cout << ScanRecord::csv_header(opts.full_values) << '\n';
    }

    std::ostream& out = to_file ? static_cast<std::ostream&>(file) : std::cout;

    auto emit = [&](const ScanRecord& rec, const Int&) {
        out << format_record(rec, opts) << '\n';
    };
    auto prime_done = [&](unsigned long p, unsigned long records) {
        out.flush();
        if (checkpointing)
            write_checkpoint_atomic(opts.checkpoint_path,
                                    ScanCheckpoint{effective.digest(), p, base_records + records});
    };

    ScanSummary s = scan_prime_values(effective, table, emit, start_after,
                                      checkpointing ? PrimeDone(prime_done) : PrimeDone());
    s.records_emitted += base_records;
    out.flush();
    return s;
}

Int default_q_bound() { return Int(8) * pow_ui(10, 25); }

BoundReport verify_case_I(const ScanConfig& cfg, const CoeffTable* table, const Int& q_bound,
                          Int* min_out) {
    bool all_above = true;
    Int min_signed(0);
    ScanSummary s = scan_prime_values(cfg, table, [&](const ScanRecord&, const Int& v) {
        if (abs(v) <= q_bound) all_above = false;
        if (min_signed == 0 || abs(v) < abs(min_signed)) min_signed = v;
    });
    if (min_out) *min_out = min_signed;
    const bool empty = s.records_emitted == 0;
    std::string label = "case I: every prime value |tau(p^{2n})| > q_bound, p<=" +
                        std::to_string(cfg.p_max);
    if (empty)
        label += " (no records; vacuous)";
    else
        label += " (minimum has " + std::to_string(digit_count(s.min_value_abs)) + " digits)";
    return BoundReport::make(label, empty ? 0.0 : signed_log10(s.min_value_abs),
                             signed_log10(q_bound), empty || all_above);
}

namespace {

// First five significant digits as d.dddde+NN, for report labels.
std::string sci5(const Int& v) {
    const Int av = abs(v);
    std::string d = av.get_str();
    std::string m = d.substr(0, std::min<std::size_t>(5, d.size()));
    std::string out = (sgn(v) < 0 ? "-" : "");
    out += m.substr(0, 1) + "." + (m.size() > 1 ? m.substr(1) : "0");
    out += "e+" + std::to_string(d.size() - 1);
    return out;
}

}  // namespace

BoundReport verify_case_II(const Int& q_bound, const Int& X) {
    const Int threshold = explicit_lower_bound_conservative(X);
    return BoundReport::make("case II: floor(ln X)^10 = " + sci5(threshold) +
                                 " exceeds q_bound = " + sci5(q_bound),
                             signed_log10(threshold), signed_log10(q_bound),
                             threshold > q_bound);
}

BoundReport parity_check(const CoeffTable& table) {
    for (long n = 1; n <= table.limit(); ++n) {
        const bool odd_coeff = mpz_odd_p(table.at(n).get_mpz_t()) != 0;
        const bool odd_square =
            (n % 2 == 1) && mpz_perfect_square_p(Int(n).get_mpz_t()) != 0;
        if (odd_coeff != odd_square) {
            return BoundReport::make("parity law tau(n) odd iff n odd square, n<=" +
                                         std::to_string(table.limit()) +
                                         "; first counterexample n=" + std::to_string(n),
                                     0.0, 0.0, false);
        }
    }
    return BoundReport::make(
        "parity law tau(n) odd iff n odd square, n<=" + std::to_string(table.limit()), 0.0, 0.0,
        true);
}

BoundReport parity_check(long N) { return parity_check(delta_series(N)); }

std::vector<ScanRecord> table1_reproduce() {
    struct Row {
        unsigned long p, two_n;
        std::size_t digits;
    };
    const Row rows[] = {{251, 2, 26}, {677, 2, 32}, {971, 2, 33},
                        {983, 2, 33}, {47, 4, 37},  {197, 4, 50}};
    CoeffTable table = delta_series(983);
    std::vector<ScanRecord> out;
    for (const Row& row : rows) {
        Int v = coeff_prime_power(table.at(static_cast<long>(row.p)), PrimePower(row.p, row.two_n));
        ScanRecord rec;
        rec.p = row.p;
        rec.two_n = row.two_n;
        rec.value_sign = sgn(v) < 0 ? -1 : 1;
        std::string dec = v.get_str();
        rec.digit_count = dec.size() - (rec.value_sign < 0 ? 1 : 0);
        rec.primality = is_probable_prime(abs(v));
        rec.value_hash = fnv1a64_hex(dec);
        rec.value_decimal = dec;
        if (rec.digit_count != row.digits)
            throw std::runtime_error("table1_reproduce: digit count drifted for p=" +
                                     std::to_string(row.p));
        if (rec.primality == Primality::composite)
            throw std::runtime_error("table1_reproduce: primality drifted for p=" +
                                     std::to_string(row.p));
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace tau

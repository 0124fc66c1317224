#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tau/coeff_engine.hpp"
#include "tau/primality.hpp"
#include "tau/report.hpp"

namespace tau {

// One candidate tau(p^{2n}) whose absolute value tested (probable) prime.
struct ScanRecord {
    unsigned long p = 0;
    unsigned long two_n = 0;  // exponent, with 2n+1 prime
    int value_sign = 0;
    std::size_t digit_count = 0;
    Primality primality = Primality::composite;
    std::string value_hash;     // fnv1a64 of the signed decimal string
    std::string value_decimal;  // filled only when the scan keeps values

    std::string to_json(bool full_values) const;
    std::string to_csv(bool full_values) const;
    std::string to_text() const;
    static std::string csv_header(bool full_values);
};

struct ScanConfig {
    unsigned long p_max = 2000;
    std::vector<unsigned long> exponent_primes = {3, 5, 7};  // values of 2n+1
    unsigned workers = 1;                                    // 0 = hardware pick
    bool keep_values = false;

    void validate() const;
    std::string digest() const;
};

struct ScanSummary {
    unsigned long primes_scanned = 0;
    unsigned long candidates_tested = 0;
    unsigned long records_emitted = 0;
    // Primes whose coefficients are structurally even (p = 2) and therefore
    // can never produce an odd prime value; scanned and excluded, not skipped.
    std::vector<unsigned long> structurally_excluded;
    Int min_value_abs;  // minimum |tau| over emitted records, 0 when none
};

// Called in canonical order: p ascending, then exponent ascending.
using ScanEmit = std::function<void(const ScanRecord&, const Int&)>;
using PrimeDone = std::function<void(unsigned long p, unsigned long records_so_far)>;

// Scans every prime p <= p_max (optionally resuming after `start_after_p`)
// against every exponent 2n = (2n+1) - 1 from the config. tau(p) comes from
// `table` when it covers p_max, from an internal series expansion when table
// is null; a table that is too small is a configuration error. Workers only
// change wall time, never the record stream.
ScanSummary scan_prime_values(const ScanConfig& cfg, const CoeffTable* table,
                              const ScanEmit& emit, unsigned long start_after_p = 0,
                              const PrimeDone& prime_done = {});

struct ScanCheckpoint {
    std::string config_digest;
    unsigned long last_completed_p = 0;
    unsigned long records_emitted = 0;

    std::string to_json() const;
    static ScanCheckpoint from_json(const std::string& text);
};

class CheckpointMismatch : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class StreamFormat { jsonl, csv, text };

struct StreamOptions {
    std::string out_path;         // empty = stdout (checkpointing then disabled)
    std::string checkpoint_path;  // empty = no checkpoint
    bool resume = false;
    bool full_values = false;
    StreamFormat format = StreamFormat::jsonl;
};

// File-backed scan with an atomically rewritten checkpoint after each
// completed prime. Resume validates the config digest (CheckpointMismatch on
// drift), truncates the output back to the checkpointed record count, and
// continues; the resulting file is record-for-record identical to an
// uninterrupted run.
ScanSummary scan_to_stream(const ScanConfig& cfg, const CoeffTable* table,
                           const StreamOptions& opts);

// 8 * 10^25, the default excluded-prime bound, as an exact integer.
Int default_q_bound();

// Case I at desk scale: every emitted record must satisfy |tau| > q_bound.
// Vacuously true on an empty stream; the minimum found is reported (and
// returned through min_out when given).
BoundReport verify_case_I(const ScanConfig& cfg, const CoeffTable* table, const Int& q_bound,
                          Int* min_out = nullptr);

// Case II: the conservative threshold floor(ln X)^10 must strictly exceed
// q_bound. Defaults reproduce the 2.5231e31-vs-8e25 comparison.
BoundReport verify_case_II(const Int& q_bound, const Int& X);

// tau(n) odd iff n is an odd perfect square, for 1 <= n <= N; the first
// counterexample, if any, is named in the label.
BoundReport parity_check(long N);
BoundReport parity_check(const CoeffTable& table);

// The six smallest prime values: tau(251^2), tau(677^2), tau(971^2),
// tau(983^2), tau(47^4), tau(197^4). Throws if digit counts or primality
// verdicts deviate from the known ones.
std::vector<ScanRecord> table1_reproduce();

}  // namespace tau

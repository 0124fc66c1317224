#include "tau/coeff_engine.hpp"

#include <bit>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "tau/factor.hpp"
#include "tau/primality.hpp"

namespace tau {

PrimePower::PrimePower(unsigned long p_, unsigned long n_) : p(p_), n(n_) {
    if (!is_prime_u64(p)) throw std::invalid_argument("PrimePower: p must be prime");
    if (n < 1) throw std::invalid_argument("PrimePower: exponent must be >= 1");
}

Weight::Weight(unsigned k_) : k(k_) {
    if (k < 4 || k % 2 != 0) throw std::invalid_argument("Weight: k must be even and >= 4");
}

CoeffTable::CoeffTable(std::vector<Int> entries_one_based) : entries_(std::move(entries_one_based)) {
    if (entries_.size() < 2 || entries_[1] != 1)
        throw std::invalid_argument("CoeffTable: entries must start with tau(1) = 1");
}

void CoeffTable::save(std::ostream& os) const {
    os << "# tau table weight=12 limit=" << limit() << '\n';
    for (long n = 1; n <= limit(); ++n) os << n << '\t' << entries_[static_cast<std::size_t>(n)] << '\n';
}

CoeffTable CoeffTable::load(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw std::invalid_argument("CoeffTable::load: empty input");
    long limit = -1;
    if (std::sscanf(header.c_str(), "# tau table weight=12 limit=%ld", &limit) != 1 || limit < 1)
        throw std::invalid_argument("CoeffTable::load: bad header: " + header);
    std::vector<Int> entries(static_cast<std::size_t>(limit) + 1);
    std::string line;
    long expect = 1;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        long n;
        std::string value;
        if (!(ls >> n >> value) || n != expect || n > limit)
            throw std::invalid_argument("CoeffTable::load: bad line: " + line);
        entries[static_cast<std::size_t>(n)] = Int(value);
        ++expect;
    }
    if (expect != limit + 1) throw std::invalid_argument("CoeffTable::load: truncated table");
    CoeffTable t(std::move(entries));
    if (t.at(1) != 1) throw std::invalid_argument("CoeffTable::load: tau(1) != 1");
    return t;
}

namespace {

std::size_t max_bits(const std::vector<Int>& v) {
    std::size_t b = 1;
    for (const Int& x : v)
        if (sgn(x) != 0) b = std::max(b, mpz_sizeinbase(x.get_mpz_t(), 2));
    return b;
}

// Pack nonnegative coefficients into one big integer, one slot of
// `words` 64-bit words per coefficient.
Int kronecker_pack(const std::vector<Int>& coeffs, std::size_t words) {
    std::vector<std::uint64_t> buf(coeffs.size() * words, 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (sgn(coeffs[i]) == 0) continue;
        mpz_export(&buf[i * words], nullptr, -1, sizeof(std::uint64_t), 0, 0,
                   coeffs[i].get_mpz_t());
    }
    Int big;
    mpz_import(big.get_mpz_t(), buf.size(), -1, sizeof(std::uint64_t), 0, 0, buf.data());
    return big;
}

// Unpack the first `count` slots of `words` words each; the integer may
// extend beyond them (truncated products drop the tail).
std::vector<Int> kronecker_unpack(const Int& big, std::size_t words, std::size_t count) {
    const std::size_t total = (mpz_sizeinbase(big.get_mpz_t(), 2) + 63) / 64;
    std::vector<std::uint64_t> buf(std::max(total, count * words), 0);
    std::size_t written = 0;
    mpz_export(buf.data(), &written, -1, sizeof(std::uint64_t), 0, 0, big.get_mpz_t());
    std::vector<Int> out(count);
    for (std::size_t i = 0; i < count; ++i)
        mpz_import(out[i].get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, &buf[i * words]);
    return out;
}

}  // namespace

std::vector<Int> poly_mul_trunc(const std::vector<Int>& a, const std::vector<Int>& b,
                                std::size_t trunc) {
    if (a.empty() || b.empty() || trunc == 0) return std::vector<Int>(trunc);
    const std::size_t na = std::min(a.size(), trunc), nb = std::min(b.size(), trunc);

    std::vector<Int> ap(na), an(na), bp(nb), bn(nb);
    for (std::size_t i = 0; i < na; ++i) (sgn(a[i]) >= 0 ? ap[i] : an[i]) = abs(a[i]);
    for (std::size_t i = 0; i < nb; ++i) (sgn(b[i]) >= 0 ? bp[i] : bn[i]) = abs(b[i]);

    // Slot width: product coefficient needs bitsA + bitsB + log2(#terms);
    // one extra bit keeps the pairwise sums below from carrying across slots.
    const std::size_t need = max_bits(a) + max_bits(b) +
                             std::bit_width(std::min(na, nb)) + 2;
    const std::size_t words = (need + 63) / 64;

    const Int AP = kronecker_pack(ap, words), AN = kronecker_pack(an, words);
    const Int BP = kronecker_pack(bp, words), BN = kronecker_pack(bn, words);

    const Int pos = AP * BP + AN * BN;  // slots hold sum of two nonneg products
    const Int neg = AP * BN + AN * BP;

    const std::size_t nc = std::min(na + nb - 1, trunc);
    std::vector<Int> cp = kronecker_unpack(pos, words, nc);
    std::vector<Int> cn = kronecker_unpack(neg, words, nc);

    std::vector<Int> c(trunc);
    for (std::size_t i = 0; i < nc; ++i) c[i] = cp[i] - cn[i];
    return c;
}

CoeffTable delta_series(long N) {
    if (N < 1) throw std::invalid_argument("delta_series: N must be >= 1");
    const std::size_t len = static_cast<std::size_t>(N);

    // Jacobi: prod (1-q^m)^3 = sum_j (-1)^j (2j+1) q^{j(j+1)/2}.
    std::vector<std::pair<std::size_t, long>> cube;
    for (std::size_t j = 0; j * (j + 1) / 2 < len; ++j)
        cube.emplace_back(j * (j + 1) / 2, (j % 2 == 0 ? 1L : -1L) * static_cast<long>(2 * j + 1));

    // Sixth power directly from the sparse square (int64 is ample here).
    std::vector<long long> e6(len, 0);
    for (auto [i1, v1] : cube) {
        for (auto [i2, v2] : cube) {
            if (i1 + i2 >= len) break;
            e6[i1 + i2] += static_cast<long long>(v1) * v2;
        }
    }
    std::vector<Int> E6(len);
    for (std::size_t i = 0; i < len; ++i) E6[i] = static_cast<long>(e6[i]);

    std::vector<Int> E12 = poly_mul_trunc(E6, E6, len);
    std::vector<Int> E24 = poly_mul_trunc(E12, E12, len);

    // tau(n) is the coefficient of q^{n-1} in the 24th power.
    std::vector<Int> entries(len + 1);
    for (std::size_t n = 1; n <= len; ++n) entries[n] = std::move(E24[n - 1]);
    return CoeffTable(std::move(entries));
}

Int coeff_prime_power(const Int& tau_p, const PrimePower& pp, Weight k) {
    if (pp.n == 1) return tau_p;
    const Int mult = pow_ui(pp.p, k.k - 1);
    Int prev(1), cur = tau_p, next;
    for (unsigned long j = 2; j <= pp.n; ++j) {
        next = tau_p * cur - mult * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

Int coeff_prime_power_poly(const Int& tau_p, const PrimePower& pp) {
    const unsigned long n = pp.n;
    Int sum(0), binom, term;
    const Int p11 = pow_ui(pp.p, 11);
    Int p11_j(1);
    for (unsigned long j = 0; 2 * j <= n; ++j) {
        mpz_bin_uiui(binom.get_mpz_t(), n - j, n - 2 * j);
        term = binom * p11_j * pow_z(tau_p, n - 2 * j);
        if (j % 2 == 0)
            sum += term;
        else
            sum -= term;
        p11_j *= p11;
    }
    return sum;
}

Int coeff_at(const Int& m, const CoeffTable* table) {
    if (m < 1) throw std::invalid_argument("coeff_at: m must be >= 1");
    if (m == 1) return Int(1);

    Factorization f = factorize(m);
    // On-demand series, built once for the largest uncovered prime.
    std::optional<CoeffTable> local;
    unsigned long need_max = 0;
    for (const auto& [p, e] : f.prime_powers) {
        if (!p.fits_ulong_p())
            throw std::invalid_argument("coeff_at: prime factor too large for tau(p) source: " +
                                        p.get_str());
        unsigned long pu = p.get_ui();
        if (table == nullptr || static_cast<long>(pu) > table->limit())
            need_max = std::max(need_max, pu);
    }
    if (need_max > 0) local = delta_series(static_cast<long>(need_max));

    Int result(1);
    for (const auto& [p, e] : f.prime_powers) {
        unsigned long pu = p.get_ui();
        const Int& tau_p = (table != nullptr && static_cast<long>(pu) <= table->limit())
                               ? table->at(static_cast<long>(pu))
                               : local->at(static_cast<long>(pu));
        result *= coeff_prime_power(tau_p, PrimePower(pu, e));
    }
    return result;
}

BoundReport mordell_check(long m, long n, const CoeffTable& table, Weight k) {
    if (m < 1 || n < 1) throw std::invalid_argument("mordell_check: m, n must be >= 1");
    if (static_cast<long long>(m) * n > table.limit())
        throw std::invalid_argument("mordell_check: table too small for m*n");

    const Int lhs = table.at(m) * table.at(n);
    Int rhs(0);
    const long g = std::gcd(m, n);
    for (long d = 1; d <= g; ++d) {
        if (g % d != 0) continue;
        rhs += pow_ui(static_cast<unsigned long>(d), k.k - 1) * table.at(m * n / (d * d));
    }
    const Int diff = lhs - rhs;
    BoundReport r = BoundReport::make(
        "mordell identity m=" + std::to_string(m) + " n=" + std::to_string(n),
        signed_log10(lhs), signed_log10(rhs), diff == 0);
    r.slack_log10 = signed_log10(diff);
    return r;
}

}  // namespace tau

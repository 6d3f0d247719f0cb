#include "midylab/midy.hpp"

#include <algorithm>
#include <numeric>

namespace midylab {

std::vector<uint64_t> period_digits(uint64_t x, uint64_t N, uint64_t b) {
    if (N < 2) throw precondition_error("period_digits: N must be >= 2");
    if (b < 2) throw precondition_error("period_digits: base must be >= 2");
    if (x < 1 || x >= N) throw precondition_error("period_digits: x must be in [1, N)");
    if (std::gcd(x, N) != 1) throw not_coprime_error(x, N);
    if (std::gcd(b % N, N) != 1) throw not_coprime_error(b, N);

    // Long division; the carry orbit returns to x after exactly |b|_N steps.
    std::vector<uint64_t> digits;
    uint64_t carry = x;
    do {
        __uint128_t t = static_cast<__uint128_t>(carry) * b;
        digits.push_back(static_cast<uint64_t>(t / N));
        carry = static_cast<uint64_t>(t % N);
    } while (carry != x);
    return digits;
}

std::string render_digits(const std::vector<uint64_t>& digits, uint64_t base) {
    if (base < 2 || base > 36)
        throw precondition_error("render_digits: text rendering supports bases 2..36");
    static const char* alphabet = "0123456789abcdefghijklmnopqrstuvwxyz";
    std::string out;
    out.reserve(digits.size());
    for (uint64_t d : digits) out.push_back(alphabet[d]);
    return out;
}

BlockDecomposition block_sum(uint64_t x, uint64_t N, uint64_t b, uint64_t d) {
    BlockDecomposition dec;
    dec.numerator = x;
    dec.modulus = N;
    dec.base = b;
    dec.digits = period_digits(x, N, b);
    const uint64_t len = dec.digits.size();
    if (d < 1 || len % d != 0)
        throw precondition_error("block_sum: d does not divide the period length " +
                                 std::to_string(len));
    dec.block_count = d;
    dec.block_length = len / d;

    // b^k - 1 must fit uint64 for the materialized block values.
    __uint128_t pk = 1;
    for (uint64_t i = 0; i < dec.block_length; ++i) {
        pk *= b;
        if (pk > (static_cast<__uint128_t>(1) << 64))
            throw limit_error("block_sum: block values exceed 64-bit range");
    }
    dec.modulus_value = static_cast<uint64_t>(pk - 1);

    __uint128_t total = 0;
    for (uint64_t j = 0; j < d; ++j) {
        uint64_t value = 0;
        for (uint64_t i = 0; i < dec.block_length; ++i)
            value = value * b + dec.digits[j * dec.block_length + i];
        dec.blocks.push_back(value);
        total += value;
    }
    if (total > ~uint64_t(0))
        throw limit_error("block_sum: block sum exceeds 64-bit range");
    dec.sum = static_cast<uint64_t>(total);
    dec.divisible = dec.sum % dec.modulus_value == 0;
    return dec;
}

namespace {

// Exact divisibility of the period value by b^k - 1 via base-b block
// folding: summing k-digit groups preserves the residue mod b^k - 1, and
// the sum of the groups is S_d(x) itself when the length is d*k.
bool fold_divisible(const std::vector<uint64_t>& digits, uint64_t b, uint64_t k) {
    std::vector<__uint128_t> col(k, 0);
    const size_t len = digits.size();
    for (size_t i = 0; i < len; ++i)
        col[(len - 1 - i) % k] += digits[i];  // digits are MSD-first

    for (int round = 0; round < 128; ++round) {
        // carry-normalize into base-b digits, least significant first
        std::vector<uint64_t> v;
        v.reserve(col.size() + 2);
        __uint128_t carry = 0;
        for (__uint128_t c : col) {
            carry += c;
            v.push_back(static_cast<uint64_t>(carry % b));
            carry /= b;
        }
        while (carry) {
            v.push_back(static_cast<uint64_t>(carry % b));
            carry /= b;
        }
        while (!v.empty() && v.back() == 0) v.pop_back();

        if (v.size() <= k) {
            if (v.empty()) return true;  // value 0
            if (v.size() < k) return false;
            return std::all_of(v.begin(), v.end(),
                               [&](uint64_t dg) { return dg == b - 1; });
        }
        col.assign(k, 0);
        for (size_t i = 0; i < v.size(); ++i) col[i % k] += v[i];
    }
    throw error("fold_divisible: folding failed to terminate");
}

void check_midy_args(uint64_t N, uint64_t b, uint64_t d) {
    if (N < 2) throw precondition_error("N must be >= 2");
    if (b < 2) throw precondition_error("base must be >= 2");
    if (std::gcd(b % N, N) != 1) throw not_coprime_error(b, N);
    if (d < 2) throw precondition_error("d must be > 1");
}

// The block-sum quotient H = (b^(dk) - 1)/(b^k - 1) carries nu_2(H) =
// nu_2(d) + slack, with slack = nu_2(b^k + 1) - 1 for even d and 0 for odd
// d. The plain nu_p(N) <= nu_p(d) bound is exact for odd p and for odd N;
// at p = 2 with 4 | N the slack term is needed to match the definition.
uint32_t two_adic_slack(uint64_t b, uint64_t k, uint64_t d) {
    if (d % 2 != 0) return 0;
    uint32_t v;  // nu_2(b^k + 1) for odd b
    if (k % 2 == 0) v = 1;
    else if (b == ~uint64_t(0)) v = 64;
    else v = nu(2, b + 1);
    return v - 1;
}

}  // namespace

bool has_midy_direct(uint64_t N, uint64_t b, uint64_t d, uint64_t oracle_cap) {
    check_midy_args(N, b, d);
    if (N > oracle_cap)
        throw limit_error("has_midy_direct: oracle size limit " +
                          std::to_string(oracle_cap) + " exceeded by N = " +
                          std::to_string(N));
    const uint64_t len = period_digits(1, N, b).size();
    if (len % d != 0)
        throw precondition_error("has_midy_direct: d does not divide the order");
    const uint64_t k = len / d;
    for (uint64_t x = 1; x < N; ++x) {
        if (std::gcd(x, N) != 1) continue;
        if (!fold_divisible(period_digits(x, N, b), b, k)) return false;
    }
    return true;
}

bool has_midy_criterion(uint64_t N, uint64_t b, uint64_t d, const FactorBudget& budget) {
    check_midy_args(N, b, d);
    const uint64_t order = order_mod(b, N, budget);
    if (order % d != 0)
        throw precondition_error("has_midy_criterion: d does not divide the order");
    const uint64_t k = order / d;
    // gcd(b^k - 1, N) from the residue; zero residue means gcd = N
    const uint64_t residue = mod_pow(b, k, N) + N - 1;
    const uint64_t g0 = residue >= N ? residue - N : residue;
    const uint64_t g = g0 == 0 ? N : std::gcd(g0, N);
    if (g == 1) return true;
    for (const auto& e : factorize(g, budget).entries) {
        uint32_t bound = nu(e.prime, d);
        if (e.prime == 2) bound += two_adic_slack(b, k, d);
        if (nu(e.prime, N) > bound) return false;
    }
    return true;
}

bool has_midy_order_form(uint64_t N, uint64_t b, uint64_t d, const FactorBudget& budget) {
    check_midy_args(N, b, d);
    const OrderProfile prof = multiplicative_order(b, N, budget);
    if (prof.order % d != 0)
        throw precondition_error("has_midy_order_form: d does not divide the order");
    const auto order_primes = factorize(prof.order, budget).entries;
    for (const auto& entry : prof.per_prime) {
        if (nu(entry.prime, N) <= nu(entry.prime, d)) continue;
        if (entry.prime == 2) {
            // |b|_2 = 1 divides every k, so no witness can exist; the
            // 2-adic slack decides membership instead
            if (nu(2, N) > nu(2, d) + two_adic_slack(b, prof.order / d, d))
                return false;
            continue;
        }
        bool witness = false;
        for (const auto& q : order_primes) {
            if (nu(q.prime, entry.order_mod_prime) >
                nu(q.prime, prof.order) - nu(q.prime, d)) {
                witness = true;
                break;
            }
        }
        if (!witness) return false;
    }
    return true;
}

bool prime_in_midy_set(uint64_t q, uint64_t N, uint64_t b, const FactorBudget& budget) {
    if (!is_prime(q)) throw precondition_error("prime_in_midy_set: q must be prime");
    const OrderProfile prof = multiplicative_order(b, N, budget);
    if (prof.order % q != 0)
        throw precondition_error("prime_in_midy_set: q does not divide the order");
    const uint32_t target = nu(q, prof.order);
    if (N % q != 0) {
        for (const auto& entry : prof.per_prime)
            if (nu(q, entry.order_mod_prime) != target) return false;
        return true;
    }
    if (q == 2) {
        // corrected form of the q | N case at q = 2 (see two_adic_slack)
        if (nu(2, N) > 1 + two_adic_slack(b, prof.order / 2, 2)) return false;
    } else if (N % (q * q) == 0) {
        return false;
    }
    for (const auto& entry : prof.per_prime) {
        if (entry.prime == q) continue;
        if (nu(q, entry.order_mod_prime) != target) return false;
    }
    return true;
}

bool MidySet::contains(uint64_t d) const {
    return std::binary_search(members.begin(), members.end(), d);
}

MidySet midy_set(uint64_t N, uint64_t b, const FactorBudget& budget) {
    if (N < 2) throw precondition_error("midy_set: N must be >= 2");
    if (std::gcd(b % N, N) != 1) throw not_coprime_error(b, N);
    MidySet set;
    set.modulus = N;
    set.base = b;
    set.order = order_mod(b, N, budget);
    if (set.order == 1) return set;  // no divisors > 1

    const auto divisors = factorize(set.order, budget).divisors();
    // ascending scan; earlier members force every multiple (upward closure)
    for (uint64_t d : divisors) {
        if (d < 2) continue;
        bool forced = false;
        for (uint64_t m : set.members) {
            if (d % m == 0) { forced = true; break; }
        }
        if (forced || has_midy_criterion(N, b, d, budget))
            set.members.push_back(d);
    }
    return set;
}

}  // namespace midylab

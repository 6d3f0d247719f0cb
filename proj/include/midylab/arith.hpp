#pragma once

#include <cstdint>
#include <vector>

#include "midylab/errors.hpp"

namespace midylab {

// (a * b) % m without overflow, any m >= 1.
inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

// b^e mod m by square-and-multiply; mod_pow(b, 0, m) == 1 % m.
uint64_t mod_pow(uint64_t b, uint64_t e, uint64_t m);

// Montgomery arithmetic for a fixed odd modulus. Values passed to mul/pow
// and returned by them live in Montgomery form.
class Montgomery {
public:
    explicit Montgomery(uint64_t n) : n_(n) {
        // n * ninv == 1 (mod 2^64), Newton iteration
        uint64_t inv = n;
        for (int i = 0; i < 5; ++i) inv *= 2 - n * inv;
        neg_inv_ = ~inv + 1;
        one_ = (~uint64_t(0)) % n + 1;     // 2^64 mod n (< n for odd n >= 3)
        r2_ = mulmod(one_, one_, n);       // 2^128 mod n
    }

    uint64_t n() const { return n_; }
    uint64_t one() const { return one_; }
    uint64_t minus_one() const { return n_ - one_; }
    uint64_t to(uint64_t x) const { return redc(static_cast<__uint128_t>(x % n_) * r2_); }
    uint64_t from(uint64_t x) const { return redc(x); }
    uint64_t mul(uint64_t a, uint64_t b) const { return redc(static_cast<__uint128_t>(a) * b); }

    uint64_t pow(uint64_t a, uint64_t e) const {
        uint64_t r = one_;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

private:
    uint64_t redc(__uint128_t t) const {
        // low halves of t and m*n cancel, so (t + m*n) >> 64 is the high
        // halves plus the carry out of the cancelled low part
        uint64_t m = static_cast<uint64_t>(t) * neg_inv_;
        __uint128_t mn = static_cast<__uint128_t>(m) * n_;
        __uint128_t s = (t >> 64) + (mn >> 64) + (static_cast<uint64_t>(t) != 0);
        return s >= n_ ? static_cast<uint64_t>(s - n_) : static_cast<uint64_t>(s);
    }

    uint64_t n_, neg_inv_, one_, r2_;
};

// Strong probable-prime test for one base: n - 1 = 2^r s with s odd and
// base^s == 1 or base^(2^i s) == -1 for some 0 <= i < r. Requires the
// modulus of `mont` to be odd and >= 3.
bool strong_probable_prime(const Montgomery& mont, uint64_t base);

// Deterministic for the full 64-bit range (fixed witness sets with the
// known strong-pseudoprime thresholds).
bool is_prime(uint64_t n);

// Effort knobs for factorize(). rho_iterations bounds the total number of
// Brent iterations spent on one factorize() call; exhausting it raises
// unfactored_residue_error with the surviving composite cofactor.
struct FactorBudget {
    uint64_t trial_bound = 10000;
    uint64_t rho_iterations = uint64_t(1) << 26;
};

struct FactorEntry {
    uint64_t prime;
    uint32_t exponent;
};

struct Factorization {
    uint64_t value = 1;
    std::vector<FactorEntry> entries;  // primes strictly increasing

    uint64_t recompose() const;
    uint32_t exponent_of(uint64_t p) const;
    std::vector<uint64_t> divisors() const;  // all divisors, ascending
};

Factorization factorize(uint64_t n, const FactorBudget& budget = {});

// nu(p, n): largest e with p^e | n.
uint32_t nu(uint64_t p, uint64_t n);

uint64_t carmichael_lambda(uint64_t n, const FactorBudget& budget = {});

// Least e >= 1 with b^e == 1 (mod m); requires gcd(b, m) == 1.
uint64_t order_mod(uint64_t b, uint64_t m, const FactorBudget& budget = {});

struct OrderPrimeEntry {
    uint64_t prime;
    uint64_t order_mod_prime;        // |b|_p
    uint64_t order_mod_prime_power;  // |b|_{p^nu_p(N)}
};

struct OrderProfile {
    uint64_t base = 0;     // reduced mod modulus
    uint64_t modulus = 0;
    uint64_t order = 0;
    std::vector<OrderPrimeEntry> per_prime;  // one entry per prime divisor of modulus
};

OrderProfile multiplicative_order(uint64_t b, uint64_t N, const FactorBudget& budget = {});

}  // namespace midylab

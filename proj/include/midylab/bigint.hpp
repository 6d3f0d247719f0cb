#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "midylab/errors.hpp"

namespace midylab {

// Unsigned arbitrary-precision integer, base 2^32 limbs, little endian.
// Only the cyclotomic module needs it; everything else stays in 64 bits.
class BigUint {
public:
    BigUint() = default;
    BigUint(uint64_t v);

    static BigUint power(uint64_t base, uint64_t exp);  // base^exp

    bool is_zero() const { return limbs_.empty(); }
    bool is_one() const { return limbs_.size() == 1 && limbs_[0] == 1; }
    bool is_even() const { return limbs_.empty() || (limbs_[0] & 1) == 0; }
    size_t bit_length() const;
    bool test_bit(size_t i) const;

    bool fits_u64() const { return limbs_.size() <= 2; }
    uint64_t to_u64() const;  // throws limit_error when too large

    int compare(const BigUint& rhs) const;
    bool operator==(const BigUint& rhs) const { return limbs_ == rhs.limbs_; }
    std::strong_ordering operator<=>(const BigUint& rhs) const {
        int c = compare(rhs);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    BigUint& operator+=(const BigUint& rhs);
    BigUint& operator-=(const BigUint& rhs);  // requires *this >= rhs
    BigUint operator+(const BigUint& rhs) const { BigUint t = *this; return t += rhs; }
    BigUint operator-(const BigUint& rhs) const { BigUint t = *this; return t -= rhs; }
    BigUint operator*(const BigUint& rhs) const;

    // quotient and remainder; remainder < den
    static void divmod(const BigUint& num, const BigUint& den, BigUint& quot, BigUint& rem);
    BigUint operator/(const BigUint& rhs) const;
    BigUint operator%(const BigUint& rhs) const;

    // exact division; throws error when the remainder is nonzero
    BigUint div_exact(const BigUint& rhs) const;

    uint64_t mod_u64(uint64_t m) const;
    BigUint& shift_right(size_t bits);

    std::string to_string() const;  // decimal

private:
    void trim();
    std::vector<uint32_t> limbs_;
};

enum class Primality { composite, prime, probable_prime };

const char* to_string(Primality p);

// Exact below 2^64; above that, trial division by small primes plus a fixed
// number of randomized strong rounds (deterministically seeded), reported as
// probable_prime.
Primality big_probable_prime(const BigUint& n, int rounds = 32);

}  // namespace midylab

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "midylab/arith.hpp"

namespace midylab {

// Repeating block of x/N in base b, most significant digit first, leading
// zeros preserved. Length is exactly the multiplicative order of b mod N.
std::vector<uint64_t> period_digits(uint64_t x, uint64_t N, uint64_t b);

// Digits rendered with 0-9 then a-z; bases above 36 are rejected.
std::string render_digits(const std::vector<uint64_t>& digits, uint64_t base);

struct BlockDecomposition {
    uint64_t numerator = 0;    // x
    uint64_t modulus = 0;      // N
    uint64_t base = 0;         // b
    uint64_t block_count = 0;  // d
    uint64_t block_length = 0; // k, with d*k == period length
    std::vector<uint64_t> digits;
    std::vector<uint64_t> blocks;  // A_j, value of the j-th k-digit block
    uint64_t sum = 0;              // S_d(x)
    uint64_t modulus_value = 0;    // b^k - 1
    bool divisible = false;        // (b^k - 1) | S_d(x)
};

// Splits the period of x/N into d blocks and sums them. Block values must
// fit 64 bits (b^k <= 2^64); beyond that a limit_error is raised.
BlockDecomposition block_sum(uint64_t x, uint64_t N, uint64_t b, uint64_t d);

inline constexpr uint64_t kDefaultOracleCap = 10000;

// Brute-force oracle straight from the definition: every x in U_N must give
// a block sum divisible by b^k - 1. Exact digit arithmetic, no factoring.
bool has_midy_direct(uint64_t N, uint64_t b, uint64_t d,
                     uint64_t oracle_cap = kDefaultOracleCap);

// Valuation criterion: nu_p(N) <= nu_p(d) for every prime p | gcd(b^k - 1, N).
bool has_midy_criterion(uint64_t N, uint64_t b, uint64_t d,
                        const FactorBudget& budget = {});

// Equivalent form stated on the orders |b|_p; kept as a cross-check route.
bool has_midy_order_form(uint64_t N, uint64_t b, uint64_t d,
                   const FactorBudget& budget = {});

// Membership of a prime q | |b|_N in the Midy set, decided by the two-case
// order-valuation characterization.
bool prime_in_midy_set(uint64_t q, uint64_t N, uint64_t b,
                       const FactorBudget& budget = {});

struct MidySet {
    uint64_t modulus = 0;
    uint64_t base = 0;
    uint64_t order = 0;
    std::vector<uint64_t> members;  // divisors d > 1 of order, ascending

    bool contains(uint64_t d) const;
};

// All divisors d > 1 of |b|_N with the Midy property. Prime divisors are
// tested first; upward closure fills in forced members, the rest are tested
// individually.
MidySet midy_set(uint64_t N, uint64_t b, const FactorBudget& budget = {});

}  // namespace midylab

#pragma once

#include <cstdint>
#include <optional>

#include "midylab/arith.hpp"
#include "midylab/bigint.hpp"

namespace midylab {

// Moebius function from the factorization of n.
int mobius(uint64_t n, const FactorBudget& budget = {});

struct CyclotomicValue {
    uint64_t n = 0;
    uint64_t base = 0;
    BigUint value;
};

// Hard ceiling on the size of exact cyclotomic values (bits of b^n).
inline constexpr uint64_t kCyclotomicMaxBits = uint64_t(1) << 20;

// Exact Phi_n(b) via the Moebius product over b^d - 1, using the reduction
// to the squarefree kernel of n. Throws limit_error past kCyclotomicMaxBits.
CyclotomicValue cyclotomic_value(uint64_t n, uint64_t b, const FactorBudget& budget = {});

// Phi_n(b) == 0 (mod N). Small values are reduced exactly; for large n the
// test switches to the per-prime-power valuation of the cyclotomic factor
// (lifting-the-exponent), which decides divisibility without the value.
bool cyclotomic_divisible(uint64_t n, uint64_t b, uint64_t N,
                          const FactorBudget& budget = {});

namespace detail {
// Both routes exposed for cross-checking in tests.
bool cyclotomic_divisible_exact(uint64_t n, uint64_t b, uint64_t N,
                                const FactorBudget& budget = {});
bool cyclotomic_divisible_valuation(uint64_t n, uint64_t b, uint64_t N,
                                    const FactorBudget& budget = {});
// nu_q(Phi_n(b)) >= e for prime q with q not dividing b.
bool cyclo_valuation_at_least(uint64_t n, uint64_t b, uint64_t q, uint32_t e,
                              const FactorBudget& budget = {});
}  // namespace detail

// Characterization test: composite N coprime to b and to |b|_N is a Midy
// pseudoprime iff |b|_N > 1 and Phi_{|b|_N}(b) == 0 (mod N).
bool midy_via_cyclotomic(uint64_t N, uint64_t b, const FactorBudget& budget = {});

struct GeneratorResult {
    BigUint value;                     // f_N(b) = Phi_N(b) / gcd(N, Phi_N(b))
    Primality primality = Primality::composite;
    bool midy_by_theorem = false;      // composite value => Midy psp to base b
    std::optional<bool> midy_checked;  // direct verification when value < 2^64
};

GeneratorResult f_generator(uint64_t n, uint64_t b, const FactorBudget& budget = {});

enum class RepunitVerdict { prime, midy_psp };

struct RepunitResult {
    BigUint value;  // (b^p + 1) / (b + 1)
    RepunitVerdict verdict = RepunitVerdict::prime;
    bool probabilistic = false;   // primality came from randomized rounds
    bool in_theorem_range = true; // 1 < b < p - 1
    std::optional<bool> midy_checked;
};

// (b^p + 1)/(b + 1) for odd prime p; with force the 1 < b < p-1 bound may be
// bypassed, in which case the theorem's dichotomy is no longer guaranteed.
RepunitResult repunit_plus_generator(uint64_t p, uint64_t b, bool force = false,
                                     const FactorBudget& budget = {});

// |b^t|_N = |b|_N / gcd(t, |b|_N).
uint64_t base_power_order(uint64_t N, uint64_t b, uint64_t t,
                          const FactorBudget& budget = {});

struct TransportResult {
    bool midy = false;
    std::string reason;  // "degenerate-order" marks |b^t|_N == 1
};

// Midy pseudoprimality carried to base b^t; requires that N is a Midy
// pseudoprime to base b.
TransportResult base_power_transport(uint64_t N, uint64_t b, uint64_t t,
                                     const FactorBudget& budget = {});

}  // namespace midylab

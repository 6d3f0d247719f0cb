#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "midylab/arith.hpp"

namespace midylab {

// Composite N with b^(N-1) == 1 (mod N). Throws on prime or non-coprime input.
bool is_fermat_psp(uint64_t N, uint64_t b);

// Odd composite N, N-1 = 2^r s with s odd: b^s == 1 or b^(2^i s) == -1 for
// some 0 <= i < r.
bool is_strong_psp(uint64_t N, uint64_t b);

// Same predicate via the 2-adic valuations of the per-prime orders; kept as
// an independent route for the equivalence tests.
bool strong_psp_by_orders(uint64_t N, uint64_t b, const FactorBudget& budget = {});

struct MidyCheck {
    bool midy = false;
    std::string reason;  // machine code: "", "degenerate-order", "even", ...

    explicit operator bool() const { return midy; }
};

// Midy pseudoprime test: N odd composite, coprime to b and to |b|_N, with
// |b|_N == |b|_p for every prime p | N. Precondition failures come back as
// false with a reason code instead of throwing.
MidyCheck check_midy_psp(uint64_t N, uint64_t b, const FactorBudget& budget = {});

inline bool is_midy_psp(uint64_t N, uint64_t b, const FactorBudget& budget = {}) {
    return check_midy_psp(N, b, budget).midy;
}

enum class DivisorCheckKind { coprime_holds, prime_r_holds, fails };

struct DivisorCheckReport {
    DivisorCheckKind kind = DivisorCheckKind::fails;
    uint64_t r = 0;       // the prime gcd(N, |b|_N) in the prime_r case
    uint32_t s = 0;       // |b|_N == r^s * |b|_r
    std::string reason;   // set when kind == fails
};

// Decides whether every divisor d > 1 of |b|_N is in the Midy set, and
// classifies the two structural cases on gcd(N, |b|_N).
DivisorCheckReport midy_full_divisor_check(uint64_t N, uint64_t b,
                                           const FactorBudget& budget = {});

// Every divisor m > 1 of a Midy pseudoprime must itself be prime or a Midy
// pseudoprime to the same base.
bool divisor_closure_check(uint64_t N, uint64_t b, const FactorBudget& budget = {});

enum class GcdCase { coprime, prime_r, invalid };

struct ClassificationRecord {
    uint64_t n = 0;
    uint64_t base = 0;
    bool prime = false;
    std::optional<uint64_t> order;  // absent when gcd(base, n) > 1 or budget ran out
    GcdCase gcd_case = GcdCase::invalid;
    uint64_t gcd_r = 0;  // the prime r when gcd_case == prime_r
    bool fermat = false;
    bool strong = false;
    bool midy = false;
    std::vector<std::string> reasons;
};

// Aggregate classifier; never throws, never runs the digit oracle. Flags
// stay false for primes; factoring-budget exhaustion is reported through
// the reasons field.
ClassificationRecord classify(uint64_t N, uint64_t b, const FactorBudget& budget = {});

const char* to_string(GcdCase c);

}  // namespace midylab

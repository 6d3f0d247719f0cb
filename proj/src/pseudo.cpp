#include "midylab/pseudo.hpp"

#include <numeric>

namespace midylab {

namespace {

void require_composite_coprime(uint64_t N, uint64_t b) {
    if (N < 3) throw precondition_error("N must be >= 3");
    if (std::gcd(b % N, N) != 1) throw not_coprime_error(b, N);
    if (is_prime(N)) throw precondition_error("N is prime");
}

bool strong_test(uint64_t N, uint64_t b) {
    // N odd >= 9, gcd(b, N) == 1
    return strong_probable_prime(Montgomery(N), b);
}

}  // namespace

bool is_fermat_psp(uint64_t N, uint64_t b) {
    require_composite_coprime(N, b);
    return mod_pow(b, N - 1, N) == 1;
}

bool is_strong_psp(uint64_t N, uint64_t b) {
    if (N % 2 == 0) throw precondition_error("N even");
    if (N < 9) throw precondition_error("N must be an odd composite >= 9");
    require_composite_coprime(N, b);
    return strong_test(N, b);
}

bool strong_psp_by_orders(uint64_t N, uint64_t b, const FactorBudget& budget) {
    if (N % 2 == 0) throw precondition_error("N even");
    if (N < 9) throw precondition_error("N must be an odd composite >= 9");
    require_composite_coprime(N, b);
    if (mod_pow(b, N - 1, N) != 1) return false;
    const OrderProfile prof = multiplicative_order(b, N, budget);
    const uint32_t k = nu(2, prof.per_prime.front().order_mod_prime_power);
    for (const auto& entry : prof.per_prime) {
        if (nu(2, entry.order_mod_prime_power) != k) return false;
        if (nu(2, entry.order_mod_prime) != k) return false;
    }
    return true;
}

MidyCheck check_midy_psp(uint64_t N, uint64_t b, const FactorBudget& budget) {
    if (N < 3) return {false, "out-of-range"};
    if (N % 2 == 0) return {false, "even"};
    if (std::gcd(b % N, N) != 1) return {false, "not-coprime-base"};
    if (is_prime(N)) return {false, "prime"};
    const OrderProfile prof = multiplicative_order(b, N, budget);
    if (std::gcd(N, prof.order) != 1) return {false, "order-not-coprime"};
    for (const auto& entry : prof.per_prime)
        if (entry.order_mod_prime != prof.order) return {false, "order-mismatch"};
    return {true, prof.order == 1 ? "degenerate-order" : ""};
}

DivisorCheckReport midy_full_divisor_check(uint64_t N, uint64_t b,
                                           const FactorBudget& budget) {
    require_composite_coprime(N, b);
    const OrderProfile prof = multiplicative_order(b, N, budget);
    const uint64_t g = std::gcd(N, prof.order);
    DivisorCheckReport report;

    if (g == 1) {
        for (const auto& entry : prof.per_prime) {
            if (entry.order_mod_prime != prof.order) {
                report.reason = "order mismatch at p = " + std::to_string(entry.prime);
                return report;
            }
        }
        report.kind = DivisorCheckKind::coprime_holds;
        return report;
    }

    if (!is_prime(g)) {
        report.reason = "gcd(N, order) = " + std::to_string(g) + " is not 1 or a prime";
        return report;
    }
    const uint64_t r = g;
    if (N % (r * r) == 0) {
        report.reason = "r^2 divides N";
        return report;
    }
    uint64_t order_mod_r = 0;
    for (const auto& entry : prof.per_prime) {
        if (entry.prime == r) {
            order_mod_r = entry.order_mod_prime;
            continue;
        }
        if (entry.order_mod_prime != prof.order) {
            report.reason = "order mismatch at p = " + std::to_string(entry.prime);
            return report;
        }
    }
    // order must equal r^s * |b|_r with s >= 1
    if (order_mod_r == 0 || prof.order % order_mod_r != 0) {
        report.reason = "|b|_r does not divide the order";
        return report;
    }
    uint64_t q = prof.order / order_mod_r;
    uint32_t s = 0;
    while (q % r == 0) { q /= r; ++s; }
    if (q != 1 || s == 0) {
        report.reason = "order is not r^s * |b|_r with s >= 1";
        return report;
    }
    report.kind = DivisorCheckKind::prime_r_holds;
    report.r = r;
    report.s = s;
    return report;
}

bool divisor_closure_check(uint64_t N, uint64_t b, const FactorBudget& budget) {
    if (!check_midy_psp(N, b, budget).midy)
        throw precondition_error("divisor_closure_check: N is not a Midy pseudoprime to base b");
    for (uint64_t m : factorize(N, budget).divisors()) {
        if (m < 2) continue;
        if (is_prime(m)) continue;
        if (!check_midy_psp(m, b, budget).midy) return false;
    }
    return true;
}

ClassificationRecord classify(uint64_t N, uint64_t b, const FactorBudget& budget) {
    ClassificationRecord rec;
    rec.n = N;
    rec.base = b;
    if (N < 2 || b < 2) {
        rec.reasons.push_back("out-of-range");
        return rec;
    }
    rec.prime = is_prime(N);
    if (rec.prime) rec.reasons.push_back("prime");

    if (std::gcd(b % N, N) != 1) {
        rec.gcd_case = GcdCase::invalid;
        rec.reasons.push_back("not-coprime");
        return rec;
    }

    try {
        const OrderProfile prof = multiplicative_order(b, N, budget);
        rec.order = prof.order;
        const uint64_t g = std::gcd(N, prof.order);
        if (g == 1) {
            rec.gcd_case = GcdCase::coprime;
        } else if (is_prime(g) && N % (g * g) != 0) {
            rec.gcd_case = GcdCase::prime_r;
            rec.gcd_r = g;
        } else {
            rec.gcd_case = GcdCase::invalid;
            rec.reasons.push_back("gcd-order-composite");
        }

        if (!rec.prime) {
            rec.fermat = mod_pow(b, N - 1, N) == 1;
            if (rec.fermat && N % 2 == 1 && N >= 9) rec.strong = strong_test(N, b);
            if (!rec.fermat) rec.reasons.push_back("fermat-fails");
            else if (N % 2 == 0) rec.reasons.push_back("even");
            if (rec.strong) {
                MidyCheck mc = check_midy_psp(N, b, budget);
                rec.midy = mc.midy;
                if (!mc.reason.empty()) rec.reasons.push_back(mc.reason);
            }
        }
    } catch (const compute_error&) {
        rec.order.reset();
        rec.gcd_case = GcdCase::invalid;
        rec.reasons.push_back("factor-budget-exhausted");
    }
    return rec;
}

const char* to_string(GcdCase c) {
    switch (c) {
        case GcdCase::coprime: return "coprime";
        case GcdCase::prime_r: return "prime_r";
        default: return "invalid";
    }
}

}  // namespace midylab

#include "midylab/cyclotomic.hpp"

#include <numeric>

#include "midylab/pseudo.hpp"

namespace midylab {

int mobius(uint64_t n, const FactorBudget& budget) {
    if (n < 1) throw precondition_error("mobius: n must be >= 1");
    if (n == 1) return 1;
    const auto f = factorize(n, budget);
    for (const auto& e : f.entries)
        if (e.exponent > 1) return 0;
    return f.entries.size() % 2 == 0 ? 1 : -1;
}

CyclotomicValue cyclotomic_value(uint64_t n, uint64_t b, const FactorBudget& budget) {
    if (n < 1) throw precondition_error("cyclotomic_value: n must be >= 1");
    if (b < 2) throw precondition_error("cyclotomic_value: base must be >= 2");
    if (n >= kCyclotomicMaxBits || n * (64 - __builtin_clzll(b)) > kCyclotomicMaxBits)
        throw limit_error("cyclotomic_value: b^n exceeds the size ceiling");

    CyclotomicValue cv;
    cv.n = n;
    cv.base = b;
    if (n == 1) {
        cv.value = BigUint(b - 1);
        return cv;
    }

    // Phi_n(x) = Phi_rad(n)(x^(n/rad)); the kernel keeps the divisor count at 2^omega
    const auto f = factorize(n, budget);
    uint64_t rad = 1;
    for (const auto& e : f.entries) rad *= e.prime;
    const uint64_t stretch = n / rad;

    BigUint num(1), den(1);
    const size_t omega = f.entries.size();
    for (size_t mask = 0; mask < (size_t(1) << omega); ++mask) {
        uint64_t d = rad;
        size_t bits = 0;
        for (size_t i = 0; i < omega; ++i)
            if (mask & (size_t(1) << i)) { d /= f.entries[i].prime; ++bits; }
        BigUint term = BigUint::power(b, d * stretch);
        term -= BigUint(1);
        // mu(rad/d) = (-1)^bits
        if (bits % 2 == 0) num = num * term;
        else den = den * term;
    }
    cv.value = num.div_exact(den);
    return cv;
}

namespace detail {

bool cyclotomic_divisible_exact(uint64_t n, uint64_t b, uint64_t N,
                                const FactorBudget& budget) {
    return cyclotomic_value(n, b, budget).value.mod_u64(N) == 0;
}

bool cyclo_valuation_at_least(uint64_t n, uint64_t b, uint64_t q, uint32_t e,
                              const FactorBudget& budget) {
    if (e == 0) return true;
    if (b % q == 0) throw not_coprime_error(b, q);

    if (q == 2) {
        // b odd: Phi_1(b) = b-1, Phi_2(b) = b+1, Phi_{2^j}(b) == 2 (mod 4) for j >= 2
        if (n == 1) return nu(2, b - 1) >= e;
        if (n == 2) {
            const __uint128_t bp1 = static_cast<__uint128_t>(b) + 1;
            uint32_t v = 0;
            __uint128_t t = bp1;
            while ((t & 1) == 0) { t >>= 1; ++v; }
            return v >= e;
        }
        uint64_t m = n;
        while (m % 2 == 0) m /= 2;
        if (m == 1) return e <= 1;  // n = 2^j, j >= 2
        return false;
    }

    const uint64_t t = order_mod(b, q, budget);
    if (n == t) {
        // nu_q(Phi_t(b)) = nu_q(b^t - 1); compare against q^e directly
        uint64_t qe = 1;
        for (uint32_t i = 0; i < e; ++i) qe *= q;  // q^e <= N fits uint64
        return mod_pow(b, t, qe) == 1;
    }
    if (n % t == 0) {
        uint64_t m = n / t;
        while (m % q == 0) m /= q;
        if (m == 1) return e <= 1;  // n = t * q^j, j >= 1
    }
    return false;
}

bool cyclotomic_divisible_valuation(uint64_t n, uint64_t b, uint64_t N,
                                    const FactorBudget& budget) {
    for (const auto& entry : factorize(N, budget).entries)
        if (!cyclo_valuation_at_least(n, b, entry.prime, entry.exponent, budget))
            return false;
    return true;
}

}  // namespace detail

bool cyclotomic_divisible(uint64_t n, uint64_t b, uint64_t N, const FactorBudget& budget) {
    if (N < 2) throw precondition_error("cyclotomic_divisible: N must be >= 2");
    if (std::gcd(b % N, N) != 1) throw not_coprime_error(b, N);
    if (n <= 4096 && n * (64 - __builtin_clzll(b)) <= 4096)
        return detail::cyclotomic_divisible_exact(n, b, N, budget);
    return detail::cyclotomic_divisible_valuation(n, b, N, budget);
}

bool midy_via_cyclotomic(uint64_t N, uint64_t b, const FactorBudget& budget) {
    if (N < 2) throw precondition_error("midy_via_cyclotomic: N must be >= 2");
    if (b < 2) throw precondition_error("midy_via_cyclotomic: base must be >= 2");
    if (is_prime(N)) throw precondition_error("N is prime");
    if (std::gcd(b % N, N) != 1) throw not_coprime_error(b, N);
    const uint64_t order = order_mod(b, N, budget);
    if (std::gcd(N, order) != 1)
        throw precondition_error("midy_via_cyclotomic: N not coprime to its order |b|_N");
    if (order == 1) return false;
    return cyclotomic_divisible(order, b, N, budget);
}

GeneratorResult f_generator(uint64_t n, uint64_t b, const FactorBudget& budget) {
    if (n <= 2) throw precondition_error("f_generator: N must be > 2");
    GeneratorResult res;
    const BigUint phi = cyclotomic_value(n, b, budget).value;
    const uint64_t g = std::gcd(n, phi.mod_u64(n));
    res.value = g == 1 ? phi : phi.div_exact(BigUint(g));
    res.primality = big_probable_prime(res.value);
    res.midy_by_theorem = res.primality == Primality::composite && !res.value.is_one();
    if (res.midy_by_theorem && res.value.fits_u64())
        res.midy_checked = is_midy_psp(res.value.to_u64(), b, budget);
    return res;
}

RepunitResult repunit_plus_generator(uint64_t p, uint64_t b, bool force,
                                     const FactorBudget& budget) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        throw precondition_error("repunit_plus_generator: p must be an odd prime");
    if (b < 2) throw precondition_error("repunit_plus_generator: base must be >= 2");
    RepunitResult res;
    res.in_theorem_range = b < p - 1;  // 1 < b < p-1
    if (!res.in_theorem_range && !force)
        throw precondition_error("repunit_plus_generator: constraint violated, "
                                 "require 1 < b < p-1 (use force to override)");
    if (p >= kCyclotomicMaxBits || p * (64 - __builtin_clzll(b)) > kCyclotomicMaxBits)
        throw limit_error("repunit_plus_generator: b^p exceeds the size ceiling");

    BigUint num = BigUint::power(b, p);
    num += BigUint(1);
    res.value = num.div_exact(BigUint(b + 1));

    const Primality verdict = big_probable_prime(res.value);
    res.probabilistic = verdict == Primality::probable_prime;
    res.verdict = verdict == Primality::composite ? RepunitVerdict::midy_psp
                                                  : RepunitVerdict::prime;
    if (res.verdict == RepunitVerdict::midy_psp && res.value.fits_u64())
        res.midy_checked = is_midy_psp(res.value.to_u64(), b, budget);
    return res;
}

uint64_t base_power_order(uint64_t N, uint64_t b, uint64_t t, const FactorBudget& budget) {
    if (t < 1) throw precondition_error("base_power_order: t must be >= 1");
    const uint64_t order = order_mod(b, N, budget);
    return order / std::gcd(t, order);
}

TransportResult base_power_transport(uint64_t N, uint64_t b, uint64_t t,
                                     const FactorBudget& budget) {
    if (t < 1) throw precondition_error("base_power_transport: t must be >= 1");
    if (!is_midy_psp(N, b, budget))
        throw precondition_error("base_power_transport: N is not a Midy pseudoprime to base b");
    const MidyCheck mc = check_midy_psp(N, mod_pow(b, t, N), budget);
    return {mc.midy, mc.reason};
}

}  // namespace midylab

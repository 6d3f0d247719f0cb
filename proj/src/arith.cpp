#include "midylab/arith.hpp"

#include <algorithm>
#include <numeric>

namespace midylab {

uint64_t mod_pow(uint64_t b, uint64_t e, uint64_t m) {
    if (m == 0) throw precondition_error("mod_pow: modulus must be >= 1");
    if (m == 1) return 0;
    uint64_t r = 1;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

bool strong_probable_prime(const Montgomery& mont, uint64_t base) {
    const uint64_t n = mont.n();
    uint64_t s = n - 1;
    int r = 0;
    while ((s & 1) == 0) { s >>= 1; ++r; }
    uint64_t x = mont.pow(mont.to(base), s);
    if (x == mont.one() || x == mont.minus_one()) return true;
    for (int i = 1; i < r; ++i) {
        x = mont.mul(x, x);
        if (x == mont.minus_one()) return true;
    }
    return false;
}

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                       23ull, 29ull, 31ull, 37ull, 41ull, 43ull, 47ull,
                       53ull, 59ull, 61ull}) {
        if (n % p == 0) return n == p;
    }
    if (n < 67 * 67) return true;

    // Witness cascade; each threshold is the smallest composite passing all
    // previous bases (A014233), so the answer is exact over all of uint64.
    Montgomery mont(n);
    if (!strong_probable_prime(mont, 2)) return false;
    if (!strong_probable_prime(mont, 3)) return false;
    if (n < 1373653) return true;
    if (!strong_probable_prime(mont, 5)) return false;
    if (n < 25326001) return true;
    if (!strong_probable_prime(mont, 7)) return false;
    if (n < 3215031751ull) return true;
    if (!strong_probable_prime(mont, 11)) return false;
    if (n < 2152302898747ull) return true;
    if (!strong_probable_prime(mont, 13)) return false;
    if (n < 3474749660383ull) return true;
    if (!strong_probable_prime(mont, 17)) return false;
    if (n < 341550071728321ull) return true;
    if (!strong_probable_prime(mont, 19)) return false;
    if (!strong_probable_prime(mont, 23)) return false;
    if (n < 3825123056546413051ull) return true;
    if (!strong_probable_prime(mont, 29)) return false;
    if (!strong_probable_prime(mont, 31)) return false;
    if (!strong_probable_prime(mont, 37)) return false;
    return true;
}

uint64_t Factorization::recompose() const {
    uint64_t n = 1;
    for (const auto& e : entries)
        for (uint32_t i = 0; i < e.exponent; ++i) n *= e.prime;
    return n;
}

uint32_t Factorization::exponent_of(uint64_t p) const {
    for (const auto& e : entries)
        if (e.prime == p) return e.exponent;
    return 0;
}

std::vector<uint64_t> Factorization::divisors() const {
    std::vector<uint64_t> divs{1};
    for (const auto& e : entries) {
        const size_t base_count = divs.size();
        uint64_t pk = 1;
        for (uint32_t i = 0; i < e.exponent; ++i) {
            pk *= e.prime;
            for (size_t j = 0; j < base_count; ++j) divs.push_back(divs[j] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

namespace {

inline uint64_t add_mod(uint64_t a, uint64_t b, uint64_t n) {
    uint64_t s = a + b;
    if (s < a || s >= n) s -= n;
    return s;
}

// Brent's variant of Pollard rho. Returns a nontrivial factor of n (odd
// composite, not necessarily prime) or 0 when the iteration budget runs out.
uint64_t brent_rho(uint64_t n, uint64_t& iterations_left) {
    if (n % 2 == 0) return 2;
    Montgomery mont(n);
    for (uint64_t c = 1; c < 64; ++c) {
        const uint64_t cm = mont.to(c);
        auto step = [&](uint64_t v) { return add_mod(mont.mul(v, v), cm, n); };
        uint64_t y = mont.to(c + 2), q = mont.one();
        uint64_t x = 0, ys = 0, g = 1;
        const uint64_t m = 128;
        for (uint64_t r = 1; g == 1; r <<= 1) {
            x = y;
            for (uint64_t i = 0; i < r; ++i) y = step(y);
            for (uint64_t k = 0; k < r && g == 1; k += m) {
                ys = y;
                const uint64_t lim = std::min(m, r - k);
                if (iterations_left < lim) return 0;
                iterations_left -= lim;
                for (uint64_t i = 0; i < lim; ++i) {
                    y = step(y);
                    q = mont.mul(q, x > y ? x - y : y - x);
                }
                g = std::gcd(mont.from(q), n);
            }
        }
        if (g == n) {
            // backtrack one step at a time
            g = 1;
            while (g == 1) {
                if (iterations_left == 0) return 0;
                --iterations_left;
                ys = step(ys);
                g = std::gcd(mont.from(x > ys ? x - ys : ys - x), n);
            }
        }
        if (g != n) return g;
        // cycle degenerated for this c; retry with the next polynomial
    }
    return 0;
}

void factor_recurse(uint64_t n, std::vector<uint64_t>& primes, uint64_t& iterations_left) {
    if (n == 1) return;
    if (is_prime(n)) {
        primes.push_back(n);
        return;
    }
    uint64_t d = brent_rho(n, iterations_left);
    if (d == 0 || d == n) throw unfactored_residue_error(n);
    factor_recurse(d, primes, iterations_left);
    factor_recurse(n / d, primes, iterations_left);
}

}  // namespace

Factorization factorize(uint64_t n, const FactorBudget& budget) {
    if (n < 2) throw precondition_error("factorize: n must be >= 2");
    Factorization f;
    f.value = n;
    std::vector<uint64_t> primes;

    uint64_t m = n;
    while (m % 2 == 0) { primes.push_back(2); m /= 2; }
    while (m % 3 == 0) { primes.push_back(3); m /= 3; }
    while (m % 5 == 0) { primes.push_back(5); m /= 5; }
    // 2-3-5 wheel
    static constexpr uint32_t wheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
    uint64_t p = 7;
    size_t w = 0;
    while (p <= budget.trial_bound && p <= m / p) {
        while (m % p == 0) { primes.push_back(p); m /= p; }
        p += wheel[w];
        w = (w + 1) & 7;
    }
    if (m > 1) {
        if (p > m / p) {
            primes.push_back(m);
        } else {
            uint64_t left = budget.rho_iterations;
            factor_recurse(m, primes, left);
        }
    }

    std::sort(primes.begin(), primes.end());
    for (uint64_t q : primes) {
        if (!f.entries.empty() && f.entries.back().prime == q)
            ++f.entries.back().exponent;
        else
            f.entries.push_back({q, 1});
    }
    return f;
}

uint32_t nu(uint64_t p, uint64_t n) {
    if (p < 2) throw precondition_error("nu: p must be a prime >= 2");
    if (n < 1) throw precondition_error("nu: n must be >= 1");
    uint32_t e = 0;
    while (n % p == 0) { n /= p; ++e; }
    return e;
}

uint64_t carmichael_lambda(uint64_t n, const FactorBudget& budget) {
    if (n < 1) throw precondition_error("carmichael_lambda: n must be >= 1");
    if (n == 1) return 1;
    uint64_t lam = 1;
    for (const auto& e : factorize(n, budget).entries) {
        uint64_t v;
        if (e.prime == 2) {
            v = e.exponent == 1 ? 1 : e.exponent == 2 ? 2 : uint64_t(1) << (e.exponent - 2);
        } else {
            v = e.prime - 1;
            for (uint32_t i = 1; i < e.exponent; ++i) v *= e.prime;
        }
        lam = lam / std::gcd(lam, v) * v;
    }
    return lam;
}

uint64_t order_mod(uint64_t b, uint64_t m, const FactorBudget& budget) {
    if (m == 0) throw precondition_error("order_mod: modulus must be >= 1");
    if (m == 1) return 1;
    b %= m;
    if (std::gcd(b, m) != 1) throw not_coprime_error(b, m);
    uint64_t e = carmichael_lambda(m, budget);
    if (e == 1) return 1;
    for (const auto& q : factorize(e, budget).entries)
        while (e % q.prime == 0 && mod_pow(b, e / q.prime, m) == 1) e /= q.prime;
    return e;
}

OrderProfile multiplicative_order(uint64_t b, uint64_t N, const FactorBudget& budget) {
    if (N < 2) throw precondition_error("multiplicative_order: modulus must be >= 2");
    if (std::gcd(b % N, N) != 1) throw not_coprime_error(b, N);
    OrderProfile prof;
    prof.base = b % N;
    prof.modulus = N;
    prof.order = order_mod(b, N, budget);
    for (const auto& e : factorize(N, budget).entries) {
        uint64_t pk = e.prime;
        for (uint32_t i = 1; i < e.exponent; ++i) pk *= e.prime;
        const uint64_t op = order_mod(b, e.prime, budget);
        const uint64_t opk = e.exponent == 1 ? op : order_mod(b, pk, budget);
        prof.per_prime.push_back({e.prime, op, opk});
    }
    return prof;
}

}  // namespace midylab

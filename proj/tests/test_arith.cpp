#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "midylab/arith.hpp"

using namespace midylab;

namespace {

// independent reference: plain trial division
bool trial_division_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

uint64_t brute_force_order(uint64_t b, uint64_t n) {
    uint64_t x = b % n, e = 1;
    while (x != 1) {
        x = mulmod(x, b % n, n);
        ++e;
    }
    return e;
}

}  // namespace

TEST_CASE("mod_pow basics") {
    CHECK(mod_pow(2, 10, 1024) == 0);
    CHECK(mod_pow(10, 6, 13) == 1);
    CHECK(mod_pow(7, 0, 5) == 1);
    CHECK(mod_pow(7, 0, 1) == 0);  // 1 mod 1
    CHECK(mod_pow(0, 5, 7) == 0);
    CHECK(mod_pow(123456789, 987654321, 1000000007ull) ==
          [] {
              // reference via repeated squaring on __uint128_t
              uint64_t r = 1, b = 123456789, e = 987654321, m = 1000000007ull;
              while (e) {
                  if (e & 1) r = (unsigned __int128)r * b % m;
                  b = (unsigned __int128)b * b % m;
                  e >>= 1;
              }
              return r;
          }());
}

TEST_CASE("Montgomery matches plain modular arithmetic") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        uint64_t n = (rng() | 1);
        if (n < 3) n = 3;
        Montgomery mont(n);
        uint64_t a = rng() % n, b = rng() % n, e = rng() % 10000;
        CHECK(mont.from(mont.mul(mont.to(a), mont.to(b))) == mulmod(a, b, n));
        CHECK(mont.from(mont.pow(mont.to(a), e)) == mod_pow(a, e, n));
    }
}

TEST_CASE("is_prime examples") {
    CHECK(is_prime(2));
    CHECK_FALSE(is_prime(561));
    CHECK_FALSE(is_prime(2047));
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK(is_prime(3));
    CHECK(is_prime(1000000007ull));
    CHECK(is_prime(18446744073709551557ull));  // largest 64-bit prime
    CHECK_FALSE(is_prime(18446744073709551555ull));
    // strong-pseudoprime thresholds themselves are composite
    CHECK_FALSE(is_prime(3215031751ull));
    CHECK_FALSE(is_prime(3825123056546413051ull));
}

TEST_CASE("is_prime agrees with trial division up to 10^6") {
    for (uint64_t n = 0; n <= 1000000; ++n)
        REQUIRE(is_prime(n) == trial_division_prime(n));
}

TEST_CASE("factorize examples") {
    auto f = factorize(75);
    REQUIRE(f.entries.size() == 2);
    CHECK(f.entries[0].prime == 3);
    CHECK(f.entries[0].exponent == 1);
    CHECK(f.entries[1].prime == 5);
    CHECK(f.entries[1].exponent == 2);

    f = factorize(91);
    REQUIRE(f.entries.size() == 2);
    CHECK(f.entries[0].prime == 7);
    CHECK(f.entries[1].prime == 13);

    f = factorize(2047);
    REQUIRE(f.entries.size() == 2);
    CHECK(f.entries[0].prime == 23);
    CHECK(f.entries[1].prime == 89);

    CHECK_THROWS_AS(factorize(1), precondition_error);
    CHECK_THROWS_AS(factorize(0), precondition_error);
}

TEST_CASE("factorize recomposes, primes verified, exponents ordered") {
    for (uint64_t n = 2; n <= 1000000; ++n) {
        auto f = factorize(n);
        REQUIRE(f.recompose() == n);
        uint64_t prev = 1;
        for (const auto& e : f.entries) {
            REQUIRE(e.prime > prev);
            prev = e.prime;
            REQUIRE(e.exponent >= 1);
            REQUIRE(is_prime(e.prime));
        }
    }
}

TEST_CASE("factorize random 63-bit integers") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 10000; ++i) {
        uint64_t n = (rng() >> 1) | (uint64_t(1) << 62);
        auto f = factorize(n);
        CHECK(f.recompose() == n);
        for (const auto& e : f.entries) CHECK(is_prime(e.prime));
    }
}

TEST_CASE("factorize budget exhaustion raises unfactored_residue_error") {
    FactorBudget tiny;
    tiny.trial_bound = 7;
    tiny.rho_iterations = 2;
    // product of two ~2^31 primes; two rho iterations cannot find them
    const uint64_t hard = 2147483647ull * 2147483629ull;
    CHECK_THROWS_AS(factorize(hard, tiny), unfactored_residue_error);
}

TEST_CASE("divisors enumeration") {
    auto d = factorize(75).divisors();
    CHECK(d == std::vector<uint64_t>{1, 3, 5, 15, 25, 75});
    d = factorize(20).divisors();
    CHECK(d == std::vector<uint64_t>{1, 2, 4, 5, 10, 20});
}

TEST_CASE("nu examples") {
    CHECK(nu(5, 75) == 2);
    CHECK(nu(2, 75) == 0);
    CHECK(nu(3, 54) == 3);
    CHECK(nu(2, 1) == 0);
    CHECK_THROWS_AS(nu(1, 10), precondition_error);
    CHECK_THROWS_AS(nu(2, 0), precondition_error);
}

TEST_CASE("carmichael_lambda examples") {
    CHECK(carmichael_lambda(1) == 1);
    CHECK(carmichael_lambda(13) == 12);
    CHECK(carmichael_lambda(75) == 20);
    CHECK(carmichael_lambda(2) == 1);
    CHECK(carmichael_lambda(4) == 2);
    CHECK(carmichael_lambda(8) == 2);
    CHECK(carmichael_lambda(16) == 4);
    CHECK(carmichael_lambda(561) == 80);
}

TEST_CASE("multiplicative_order examples") {
    CHECK(multiplicative_order(10, 13).order == 6);
    CHECK(multiplicative_order(8, 75).order == 20);
    CHECK(multiplicative_order(1, 99).order == 1);

    auto prof = multiplicative_order(2, 2047);
    CHECK(prof.order == 11);
    REQUIRE(prof.per_prime.size() == 2);
    CHECK(prof.per_prime[0].prime == 23);
    CHECK(prof.per_prime[0].order_mod_prime == 11);
    CHECK(prof.per_prime[1].prime == 89);
    CHECK(prof.per_prime[1].order_mod_prime == 11);

    CHECK_THROWS_AS(multiplicative_order(10, 15), not_coprime_error);
    CHECK_THROWS_AS(multiplicative_order(6, 2), not_coprime_error);
}

TEST_CASE("order properties up to 100000") {
    for (uint64_t n = 2; n <= 100000; ++n) {
        const uint64_t lam = carmichael_lambda(n);
        for (uint64_t b = 2; b <= 12; ++b) {
            if (std::gcd(b % n, n) != 1) continue;
            auto prof = multiplicative_order(b, n);
            REQUIRE(mod_pow(b, prof.order, n) == 1);
            // minimality: no proper divisor order/q works
            if (prof.order > 1)
                for (const auto& q : factorize(prof.order).entries)
                    REQUIRE(mod_pow(b, prof.order / q.prime, n) != 1);
            REQUIRE(lam % prof.order == 0);
            // order is the lcm of the per-prime-power orders
            uint64_t l = 1;
            for (const auto& e : prof.per_prime)
                l = l / std::gcd(l, e.order_mod_prime_power) * e.order_mod_prime_power;
            REQUIRE(l == prof.order);
            if (n <= 300) REQUIRE(prof.order == brute_force_order(b, n));
        }
    }
}

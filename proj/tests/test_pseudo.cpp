#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "midylab/midy.hpp"
#include "midylab/pseudo.hpp"

using namespace midylab;

TEST_CASE("fermat pseudoprimes") {
    CHECK(is_fermat_psp(561, 2));
    CHECK(is_fermat_psp(341, 2));
    CHECK_FALSE(is_fermat_psp(9, 2));
    CHECK_THROWS_AS(is_fermat_psp(13, 2), precondition_error);   // prime input
    CHECK_THROWS_AS(is_fermat_psp(15, 5), not_coprime_error);
}

TEST_CASE("strong pseudoprimes") {
    CHECK(is_strong_psp(2047, 2));
    CHECK(is_strong_psp(91, 53));
    CHECK_FALSE(is_strong_psp(341, 2));
    CHECK_FALSE(is_strong_psp(561, 2));
    CHECK_THROWS_AS(is_strong_psp(341, 11), not_coprime_error);
    CHECK_THROWS_AS(is_strong_psp(1024, 3), precondition_error); // even
    CHECK_THROWS_AS(is_strong_psp(13, 2), precondition_error);   // prime
}

TEST_CASE("strong test by orders matches the examples") {
    CHECK(strong_psp_by_orders(2047, 2));
    CHECK_FALSE(strong_psp_by_orders(341, 2));
    CHECK(strong_psp_by_orders(91, 53));
}

TEST_CASE("strong test equivalence up to 100000") {
    for (uint64_t n = 9; n <= 100000; n += 2) {
        if (is_prime(n)) continue;
        for (uint64_t b : {2ull, 3ull, 5ull, 7ull}) {
            if (std::gcd(b, n) != 1) continue;
            REQUIRE(is_strong_psp(n, b) == strong_psp_by_orders(n, b));
        }
    }
}

TEST_CASE("midy pseudoprimes") {
    CHECK(is_midy_psp(91, 9));
    CHECK_FALSE(is_midy_psp(91, 53));
    CHECK(is_midy_psp(2047, 2));
    CHECK_FALSE(is_midy_psp(561, 2));
    CHECK(is_midy_psp(91, 16));

    // no-throw contract: reasons instead of errors
    CHECK(check_midy_psp(13, 10).reason == "prime");
    CHECK(check_midy_psp(15, 5).reason == "not-coprime-base");
    CHECK(check_midy_psp(341, 2).reason == "order-mismatch");
    CHECK(check_midy_psp(22, 3).reason == "even");
    // |10|_9 = 1: vacuously Midy, flagged as degenerate
    auto degenerate = check_midy_psp(9, 10);
    CHECK(degenerate.midy);
    CHECK(degenerate.reason == "degenerate-order");
}

TEST_CASE("full divisor check cases") {
    auto rep = midy_full_divisor_check(91, 9);
    CHECK(rep.kind == DivisorCheckKind::coprime_holds);

    rep = midy_full_divisor_check(111, 10);
    CHECK(rep.kind == DivisorCheckKind::prime_r_holds);
    CHECK(rep.r == 3);
    CHECK(rep.s == 1);

    rep = midy_full_divisor_check(561, 2);
    CHECK(rep.kind == DivisorCheckKind::fails);
    CHECK(rep.reason.find("order mismatch") != std::string::npos);
}

TEST_CASE("the prime_r case agrees with the digit oracle") {
    // |10|_111 = 3 and every d > 1 dividing it must show the Midy property
    auto rep = midy_full_divisor_check(111, 10);
    REQUIRE(rep.kind == DivisorCheckKind::prime_r_holds);
    CHECK(has_midy_direct(111, 10, 3));
}

TEST_CASE("divisor closure") {
    CHECK(divisor_closure_check(91, 9));
    CHECK(divisor_closure_check(2047, 2));
    CHECK(divisor_closure_check(3277, 4));
    CHECK_THROWS_AS(divisor_closure_check(341, 2), precondition_error);
}

TEST_CASE("classify fills the record") {
    auto rec = classify(2047, 2);
    CHECK_FALSE(rec.prime);
    CHECK(rec.fermat);
    CHECK(rec.strong);
    CHECK(rec.midy);
    CHECK(rec.order == 11);
    CHECK(rec.gcd_case == GcdCase::coprime);

    rec = classify(13, 10);
    CHECK(rec.prime);
    CHECK_FALSE(rec.fermat);
    CHECK_FALSE(rec.strong);
    CHECK_FALSE(rec.midy);

    rec = classify(341, 2);
    CHECK(rec.fermat);
    CHECK_FALSE(rec.strong);
    CHECK_FALSE(rec.midy);

    rec = classify(15, 5);
    CHECK_FALSE(rec.fermat);
    CHECK(rec.gcd_case == GcdCase::invalid);
    REQUIRE(!rec.reasons.empty());
    CHECK(rec.reasons.front() == "not-coprime");
}

TEST_CASE("classify survives a tiny factoring budget") {
    FactorBudget tiny;
    tiny.trial_bound = 7;
    tiny.rho_iterations = 2;
    const uint64_t hard = 2147483647ull * 2147483629ull;
    auto rec = classify(hard, 2, tiny);
    CHECK_FALSE(rec.prime);
    CHECK_FALSE(rec.order.has_value());
    bool noted = false;
    for (const auto& r : rec.reasons) noted = noted || r == "factor-budget-exhausted";
    CHECK(noted);
}

TEST_CASE("hierarchy and definition equivalence up to 100000") {
    for (uint64_t n = 9; n <= 100000; n += 2) {
        if (is_prime(n)) continue;
        for (uint64_t b : {2ull, 3ull, 10ull}) {
            if (std::gcd(b, n) != 1) continue;
            const bool fermat = is_fermat_psp(n, b);
            const bool strong = is_strong_psp(n, b);
            const bool midy = is_midy_psp(n, b);
            if (midy) REQUIRE(strong);
            if (strong) REQUIRE(fermat);

            // definition route: coprime order, full divisor set, odd composite
            const uint64_t order = multiplicative_order(b, n).order;
            bool by_definition = false;
            if (std::gcd(n, order) == 1) {
                auto rep = midy_full_divisor_check(n, b);
                by_definition = rep.kind == DivisorCheckKind::coprime_holds;
            }
            REQUIRE(midy == by_definition);

            // structural theorem: when the full check passes at all,
            // gcd(N, order) is 1 or prime with square-free r
            auto rep = midy_full_divisor_check(n, b);
            if (rep.kind != DivisorCheckKind::fails) {
                const uint64_t g = std::gcd(n, order);
                REQUIRE((g == 1 || is_prime(g)));
                if (g > 1) REQUIRE(n % (g * g) != 0);
            }
        }
    }
}

TEST_CASE("non-closure of midy bases under products") {
    CHECK(is_midy_psp(91, 9));
    CHECK(is_midy_psp(91, 16));
    CHECK((9 * 16) % 91 == 53);
    CHECK_FALSE(is_midy_psp(91, 53));
    CHECK(is_strong_psp(91, 53));
}

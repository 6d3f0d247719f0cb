#include "midylab/bigint.hpp"

#include <algorithm>
#include <bit>
#include <random>

#include "midylab/arith.hpp"

namespace midylab {

BigUint::BigUint(uint64_t v) {
    if (v) limbs_.push_back(static_cast<uint32_t>(v));
    if (v >> 32) limbs_.push_back(static_cast<uint32_t>(v >> 32));
}

void BigUint::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigUint BigUint::power(uint64_t base, uint64_t exp) {
    BigUint result(1), b(base);
    while (exp) {
        if (exp & 1) result = result * b;
        b = b * b;
        exp >>= 1;
    }
    return result;
}

size_t BigUint::bit_length() const {
    if (limbs_.empty()) return 0;
    return 32 * (limbs_.size() - 1) + (32 - std::countl_zero(limbs_.back()));
}

bool BigUint::test_bit(size_t i) const {
    const size_t limb = i / 32;
    if (limb >= limbs_.size()) return false;
    return (limbs_[limb] >> (i % 32)) & 1;
}

uint64_t BigUint::to_u64() const {
    if (!fits_u64()) throw limit_error("BigUint::to_u64: value exceeds 64 bits");
    uint64_t v = 0;
    if (limbs_.size() > 1) v = static_cast<uint64_t>(limbs_[1]) << 32;
    if (!limbs_.empty()) v |= limbs_[0];
    return v;
}

int BigUint::compare(const BigUint& rhs) const {
    if (limbs_.size() != rhs.limbs_.size())
        return limbs_.size() < rhs.limbs_.size() ? -1 : 1;
    for (size_t i = limbs_.size(); i-- > 0;)
        if (limbs_[i] != rhs.limbs_[i]) return limbs_[i] < rhs.limbs_[i] ? -1 : 1;
    return 0;
}

BigUint& BigUint::operator+=(const BigUint& rhs) {
    if (limbs_.size() < rhs.limbs_.size()) limbs_.resize(rhs.limbs_.size(), 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < limbs_.size(); ++i) {
        carry += limbs_[i];
        if (i < rhs.limbs_.size()) carry += rhs.limbs_[i];
        limbs_[i] = static_cast<uint32_t>(carry);
        carry >>= 32;
    }
    if (carry) limbs_.push_back(static_cast<uint32_t>(carry));
    return *this;
}

BigUint& BigUint::operator-=(const BigUint& rhs) {
    if (compare(rhs) < 0) throw error("BigUint: subtraction underflow");
    int64_t borrow = 0;
    for (size_t i = 0; i < limbs_.size(); ++i) {
        int64_t v = static_cast<int64_t>(limbs_[i]) - borrow -
                    (i < rhs.limbs_.size() ? rhs.limbs_[i] : 0);
        borrow = v < 0;
        if (v < 0) v += int64_t(1) << 32;
        limbs_[i] = static_cast<uint32_t>(v);
    }
    trim();
    return *this;
}

BigUint BigUint::operator*(const BigUint& rhs) const {
    if (is_zero() || rhs.is_zero()) return BigUint();
    BigUint out;
    out.limbs_.assign(limbs_.size() + rhs.limbs_.size(), 0);
    for (size_t i = 0; i < limbs_.size(); ++i) {
        uint64_t carry = 0;
        const uint64_t a = limbs_[i];
        for (size_t j = 0; j < rhs.limbs_.size(); ++j) {
            carry += a * rhs.limbs_[j] + out.limbs_[i + j];
            out.limbs_[i + j] = static_cast<uint32_t>(carry);
            carry >>= 32;
        }
        out.limbs_[i + rhs.limbs_.size()] = static_cast<uint32_t>(carry);
    }
    out.trim();
    return out;
}

namespace {

// divide by a single 32-bit limb, returning the remainder
uint32_t div_limb(std::vector<uint32_t>& limbs, uint32_t d) {
    uint64_t rem = 0;
    for (size_t i = limbs.size(); i-- > 0;) {
        uint64_t cur = (rem << 32) | limbs[i];
        limbs[i] = static_cast<uint32_t>(cur / d);
        rem = cur % d;
    }
    while (!limbs.empty() && limbs.back() == 0) limbs.pop_back();
    return static_cast<uint32_t>(rem);
}

}  // namespace

void BigUint::divmod(const BigUint& num, const BigUint& den, BigUint& quot, BigUint& rem) {
    if (den.is_zero()) throw error("BigUint: division by zero");
    if (num.compare(den) < 0) {
        rem = num;
        quot = BigUint();
        return;
    }
    if (den.limbs_.size() == 1) {
        quot = num;
        uint32_t r = div_limb(quot.limbs_, den.limbs_[0]);
        rem = BigUint(r);
        return;
    }

    // Knuth algorithm D, base 2^32
    const int shift = std::countl_zero(den.limbs_.back());
    const size_t n = den.limbs_.size();
    const size_t m = num.limbs_.size() - n;

    // normalized copies: u has an extra high limb
    std::vector<uint32_t> u(num.limbs_.size() + 1, 0), v(n, 0);
    if (shift == 0) {
        std::copy(num.limbs_.begin(), num.limbs_.end(), u.begin());
        std::copy(den.limbs_.begin(), den.limbs_.end(), v.begin());
    } else {
        for (size_t i = num.limbs_.size(); i-- > 0;) {
            u[i + 1] |= num.limbs_[i] >> (32 - shift);
            u[i] = num.limbs_[i] << shift;
        }
        for (size_t i = n; i-- > 0;) {
            if (i + 1 < n) v[i + 1] |= den.limbs_[i] >> (32 - shift);
            v[i] |= den.limbs_[i] << shift;
        }
    }

    quot.limbs_.assign(m + 1, 0);
    const uint64_t b = uint64_t(1) << 32;
    for (size_t j = m + 1; j-- > 0;) {
        uint64_t top = (static_cast<uint64_t>(u[j + n]) << 32) | u[j + n - 1];
        uint64_t qhat = top / v[n - 1];
        uint64_t rhat = top % v[n - 1];
        while (qhat >= b ||
               qhat * v[n - 2] > ((rhat << 32) | u[j + n - 2])) {
            --qhat;
            rhat += v[n - 1];
            if (rhat >= b) break;
        }
        // multiply-subtract
        int64_t borrow = 0;
        uint64_t carry = 0;
        for (size_t i = 0; i < n; ++i) {
            carry += qhat * v[i];
            int64_t sub = static_cast<int64_t>(u[i + j]) - borrow -
                          static_cast<int64_t>(carry & 0xffffffff);
            carry >>= 32;
            borrow = 0;
            if (sub < 0) { sub += b; borrow = 1; }
            u[i + j] = static_cast<uint32_t>(sub);
        }
        int64_t sub = static_cast<int64_t>(u[j + n]) - borrow -
                      static_cast<int64_t>(carry);
        if (sub < 0) {
            // qhat was one too large; add back
            sub += b;
            --qhat;
            uint64_t c = 0;
            for (size_t i = 0; i < n; ++i) {
                c += static_cast<uint64_t>(u[i + j]) + v[i];
                u[i + j] = static_cast<uint32_t>(c);
                c >>= 32;
            }
            sub += static_cast<int64_t>(c);
        }
        u[j + n] = static_cast<uint32_t>(sub);
        quot.limbs_[j] = static_cast<uint32_t>(qhat);
    }
    quot.trim();

    rem.limbs_.assign(u.begin(), u.begin() + n);
    if (shift) {
        for (size_t i = 0; i < n; ++i) {
            rem.limbs_[i] >>= shift;
            if (i + 1 < n) rem.limbs_[i] |= u[i + 1] << (32 - shift);
        }
    }
    rem.trim();
}

BigUint BigUint::operator/(const BigUint& rhs) const {
    BigUint q, r;
    divmod(*this, rhs, q, r);
    return q;
}

BigUint BigUint::operator%(const BigUint& rhs) const {
    BigUint q, r;
    divmod(*this, rhs, q, r);
    return r;
}

BigUint BigUint::div_exact(const BigUint& rhs) const {
    BigUint q, r;
    divmod(*this, rhs, q, r);
    if (!r.is_zero()) throw error("BigUint: division expected to be exact");
    return q;
}

uint64_t BigUint::mod_u64(uint64_t m) const {
    if (m == 0) throw error("BigUint: modulus must be >= 1");
    __uint128_t rem = 0;
    for (size_t i = limbs_.size(); i-- > 0;)
        rem = ((rem << 32) | limbs_[i]) % m;
    return static_cast<uint64_t>(rem);
}

BigUint& BigUint::shift_right(size_t bits) {
    const size_t limb_shift = bits / 32, bit_shift = bits % 32;
    if (limb_shift >= limbs_.size()) {
        limbs_.clear();
        return *this;
    }
    limbs_.erase(limbs_.begin(), limbs_.begin() + limb_shift);
    if (bit_shift) {
        for (size_t i = 0; i < limbs_.size(); ++i) {
            limbs_[i] >>= bit_shift;
            if (i + 1 < limbs_.size())
                limbs_[i] |= limbs_[i + 1] << (32 - bit_shift);
        }
    }
    trim();
    return *this;
}

std::string BigUint::to_string() const {
    if (is_zero()) return "0";
    std::vector<uint32_t> work = limbs_;
    std::string out;
    while (!work.empty()) {
        uint32_t r = div_limb(work, 1000000000u);
        if (work.empty()) {
            out = std::to_string(r) + out;
        } else {
            std::string part = std::to_string(r);
            out = std::string(9 - part.size(), '0') + part + out;
        }
    }
    return out;
}

const char* to_string(Primality p) {
    switch (p) {
        case Primality::composite: return "composite";
        case Primality::prime: return "prime";
        default: return "probable_prime";
    }
}

namespace {

BigUint big_mod_pow(const BigUint& base, const BigUint& exp, const BigUint& mod) {
    BigUint result(1), b = base % mod;
    const size_t bits = exp.bit_length();
    for (size_t i = 0; i < bits; ++i) {
        if (exp.test_bit(i)) result = (result * b) % mod;
        b = (b * b) % mod;
    }
    return result;
}

bool big_strong_round(const BigUint& n, const BigUint& n_minus_1,
                      const BigUint& odd_part, size_t two_exp, uint64_t base) {
    BigUint x = big_mod_pow(BigUint(base), odd_part, n);
    if (x.is_one() || x == n_minus_1) return true;
    for (size_t i = 1; i < two_exp; ++i) {
        x = (x * x) % n;
        if (x == n_minus_1) return true;
    }
    return false;
}

}  // namespace

Primality big_probable_prime(const BigUint& n, int rounds) {
    if (n.fits_u64()) return is_prime(n.to_u64()) ? Primality::prime : Primality::composite;

    // trial division by primes below 2000
    for (uint64_t p = 2; p < 2000; ++p) {
        if (!is_prime(p)) continue;
        if (n.mod_u64(p) == 0) return Primality::composite;
    }

    BigUint n_minus_1 = n;
    n_minus_1 -= BigUint(1);
    BigUint odd_part = n_minus_1;
    size_t two_exp = 0;
    while (odd_part.is_even()) {
        odd_part.shift_right(1);
        ++two_exp;
    }

    // a dozen fixed prime bases, then randomized ones; the generator is
    // seeded from the number so results are reproducible
    static constexpr uint64_t fixed[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    int done = 0;
    for (uint64_t base : fixed) {
        if (done == rounds) break;
        if (!big_strong_round(n, n_minus_1, odd_part, two_exp, base)) return Primality::composite;
        ++done;
    }
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ n.mod_u64(0xffffffffffffffc5ull));
    for (; done < rounds; ++done) {
        uint64_t base = (rng() % 0xfffffffffffffff0ull) + 3;
        if (!big_strong_round(n, n_minus_1, odd_part, two_exp, base)) return Primality::composite;
    }
    return Primality::probable_prime;
}

}  // namespace midylab

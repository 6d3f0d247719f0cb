#pragma once

#include <stdexcept>
#include <string>
#include <cstdint>

namespace midylab {

// Base of every error thrown by the library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad arguments: out-of-range values, wrong parity, a prime where a
// composite is required, non-divisors, violated theorem hypotheses.
// The CLI reports these as usage errors (exit 1).
struct precondition_error : error {
    using error::error;
};

struct not_coprime_error : precondition_error {
    not_coprime_error(uint64_t a, uint64_t b)
        : precondition_error("not coprime: gcd(" + std::to_string(a) + ", " +
                             std::to_string(b) + ") > 1"),
          lhs(a), rhs(b) {}
    uint64_t lhs, rhs;
};

// Resource limits reached: factoring budget, oracle caps, oversized
// values. The CLI reports these as computational failures (exit 2).
struct compute_error : error {
    using error::error;
};

struct unfactored_residue_error : compute_error {
    explicit unfactored_residue_error(uint64_t n)
        : compute_error("unfactored residue " + std::to_string(n) +
                        ": effort budget exhausted"),
          residue(n) {}
    uint64_t residue;
};

struct limit_error : compute_error {
    using compute_error::compute_error;
};

struct checkpoint_error : compute_error {
    using compute_error::compute_error;
};

}  // namespace midylab

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "midylab/arith.hpp"

namespace midylab {

enum class SieveMode { fermat, strong, midy, all };

const char* to_string(SieveMode m);
std::optional<SieveMode> sieve_mode_from_string(const std::string& s);

struct SieveTask {
    uint64_t lo = 0;
    uint64_t hi = 0;                // exclusive
    std::vector<uint64_t> bases;    // sorted, deduplicated by canonicalize()
    SieveMode mode = SieveMode::strong;
    uint64_t chunk = uint64_t(1) << 20;

    void canonicalize();            // sorts bases, validates the task
    uint64_t fingerprint() const;   // FNV-1a over the canonical text form
    std::string to_line() const;
};

struct SieveHit {
    uint64_t n = 0;
    uint64_t base = 0;
    bool fermat = false;
    bool strong = false;
    bool midy = false;

    friend bool operator==(const SieveHit&, const SieveHit&) = default;
};

struct SieveSkip {
    uint64_t n = 0;
    std::string reason;
};

// On-disk sieve state: fingerprint, completed chunks (one line each), and
// the hits/skips flushed with their chunk. Rewritten atomically via a temp
// file and rename.
struct Checkpoint {
    uint64_t fingerprint = 0;
    std::vector<std::pair<uint64_t, uint64_t>> done;  // ascending, disjoint
    std::vector<SieveHit> hits;                       // ascending (n, base)
    std::vector<SieveSkip> skipped;

    static Checkpoint load(const std::string& path);  // throws checkpoint_error
    void save(const std::string& path) const;
    bool covers(uint64_t lo, uint64_t hi) const;
};

struct SieveReport {
    std::vector<SieveHit> hits;
    std::vector<SieveSkip> skipped;
    uint64_t candidates_scanned = 0;  // this run
    bool complete = false;
};

struct SieveOptions {
    unsigned jobs = 1;
    std::string checkpoint_path;    // empty: no persistence
    uint64_t stop_after_chunks = 0; // abort (checkpointed) after this many commits; 0 = off
    FactorBudget budget{};
    std::function<void(uint64_t scanned, uint64_t total)> progress;
};

// Emits every odd composite in [lo, hi) passing the mode's test to every
// base, in ascending order, one row per (N, base) with the full flag
// triple. Deterministic for any worker count.
SieveReport sieve_range(const SieveTask& task, const SieveOptions& opts = {});

enum class PsiKind { psi, psi_tilde };

const char* to_string(PsiKind k);

struct PsiRecord {
    uint32_t k = 0;
    PsiKind kind = PsiKind::psi;
    uint64_t limit = 0;
    std::optional<uint64_t> value;  // empty: exceeds limit
};

struct PsiOptions {
    unsigned jobs = 1;
    uint64_t chunk = uint64_t(1) << 20;
    FactorBudget budget{};
    std::function<void(uint64_t scanned)> progress;  // every 10^7 candidates
};

// Smallest odd composite that is a strong (psi) or Midy (psi_tilde)
// pseudoprime to each of the first k primes simultaneously.
PsiRecord psi_search(uint32_t k, PsiKind kind, uint64_t limit,
                     const PsiOptions& opts = {});

std::vector<uint64_t> first_k_primes(uint32_t k);

struct PsiBoundReport {
    uint32_t k = 0;
    uint64_t psi_value = 0;
    bool composite = false;
    bool strong_to_all = false;
    std::vector<uint64_t> midy_fail_bases;  // bases where the Midy test fails

    // psi_k is strong to every base yet not Midy to at least one, so the
    // smallest Midy pseudoprime for k bases lies strictly above it.
    bool bound_holds() const {
        return composite && strong_to_all && !midy_fail_bases.empty();
    }
};

// Single-number checks against the published psi_k values, k in 4..8.
PsiBoundReport verify_psi_bound(uint32_t k, const FactorBudget& budget = {});

struct RatioReport {
    uint64_t bound = 0;
    uint64_t base = 0;
    uint64_t strong_count = 0;
    uint64_t midy_count = 0;
    std::optional<double> ratio;  // empty when strong_count == 0
};

// Counts strong and Midy pseudoprimes to `base` below `bound`; every Midy
// hit is checked to be a strong hit.
RatioReport ratio_report(uint64_t bound, uint64_t base, const SieveOptions& opts = {});

}  // namespace midylab

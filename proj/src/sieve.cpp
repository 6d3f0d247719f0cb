#include "midylab/sieve.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <exception>
#include <filesystem>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include "midylab/pseudo.hpp"

namespace midylab {

const char* to_string(SieveMode m) {
    switch (m) {
        case SieveMode::fermat: return "fermat";
        case SieveMode::strong: return "strong";
        case SieveMode::midy: return "midy";
        default: return "all";
    }
}

std::optional<SieveMode> sieve_mode_from_string(const std::string& s) {
    if (s == "fermat") return SieveMode::fermat;
    if (s == "strong") return SieveMode::strong;
    if (s == "midy") return SieveMode::midy;
    if (s == "all") return SieveMode::all;
    return std::nullopt;
}

const char* to_string(PsiKind k) {
    return k == PsiKind::psi ? "psi" : "psi_tilde";
}

void SieveTask::canonicalize() {
    if (lo >= hi) throw precondition_error("sieve: lo must be < hi");
    if (chunk < 1) throw precondition_error("sieve: chunk must be >= 1");
    if (bases.empty()) throw precondition_error("sieve: at least one base required");
    std::sort(bases.begin(), bases.end());
    bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
    for (uint64_t b : bases)
        if (b < 2) throw precondition_error("sieve: bases must be >= 2");
}

std::string SieveTask::to_line() const {
    std::string s = std::to_string(lo) + " " + std::to_string(hi) + " " +
                    to_string(mode) + " " + std::to_string(chunk) + " ";
    for (size_t i = 0; i < bases.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(bases[i]);
    }
    return s;
}

uint64_t SieveTask::fingerprint() const {
    // FNV-1a 64
    uint64_t h = 0xcbf29ce484222325ull;
    for (char c : to_line()) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

namespace {

bool fermat_test_fast(const Montgomery& mont, uint64_t b) {
    return mont.pow(mont.to(b), mont.n() - 1) == mont.one();
}

struct ChunkOutput {
    std::vector<SieveHit> hits;
    std::vector<SieveSkip> skipped;
    uint64_t scanned = 0;
};

// Scan one chunk of odd candidates. The cheap per-base gate runs first
// (smallest base first), the deterministic primality test only for
// survivors, the order-based Midy work last.
ChunkOutput scan_chunk(uint64_t lo, uint64_t hi, const SieveTask& task,
                       const FactorBudget& budget) {
    ChunkOutput out;
    uint64_t n = std::max<uint64_t>(lo, 9);
    if (n % 2 == 0) ++n;
    for (; n < hi; n += 2) {
        ++out.scanned;
        const Montgomery mont(n);
        bool pass = true;
        for (uint64_t b : task.bases) {
            if (std::gcd(b % n, n) != 1) { pass = false; break; }
            const bool strong = task.mode == SieveMode::strong || task.mode == SieveMode::midy
                                    ? strong_probable_prime(mont, b)
                                    : fermat_test_fast(mont, b);
            if (!strong) { pass = false; break; }
        }
        if (!pass || is_prime(n)) continue;

        // candidate survived the cheap gate; compute full flags per base
        bool keep = true;
        std::vector<SieveHit> rows;
        try {
            for (uint64_t b : task.bases) {
                SieveHit h;
                h.n = n;
                h.base = b;
                h.fermat = fermat_test_fast(mont, b);
                h.strong = h.fermat && strong_probable_prime(mont, b);
                h.midy = h.strong && check_midy_psp(n, b, budget).midy;
                if (task.mode == SieveMode::midy && !h.midy) { keep = false; break; }
                rows.push_back(h);
            }
        } catch (const compute_error&) {
            out.skipped.push_back({n, "factor-budget"});
            continue;
        }
        if (keep)
            out.hits.insert(out.hits.end(), rows.begin(), rows.end());
    }
    return out;
}

struct ChunkSpec {
    uint64_t lo, hi;
};

// Ordered fan-out/fan-in: workers grab chunk indices from a shared counter,
// the committer consumes results strictly in index order. Output is thus
// independent of the worker count.
void run_chunks(const std::vector<ChunkSpec>& chunks, unsigned jobs,
                const std::function<ChunkOutput(const ChunkSpec&)>& work,
                const std::function<bool(size_t, ChunkOutput&&)>& commit) {
    if (chunks.empty()) return;
    jobs = std::max(1u, jobs);

    std::atomic<size_t> next{0};
    std::atomic<bool> stop{false};
    std::mutex mu;
    std::condition_variable cv;
    std::map<size_t, ChunkOutput> ready;
    std::exception_ptr failure;

    auto worker = [&] {
        while (!stop.load(std::memory_order_relaxed)) {
            const size_t i = next.fetch_add(1);
            if (i >= chunks.size()) break;
            try {
                ChunkOutput out = work(chunks[i]);
                std::lock_guard lock(mu);
                ready.emplace(i, std::move(out));
            } catch (...) {
                std::lock_guard lock(mu);
                if (!failure) failure = std::current_exception();
                stop.store(true);
            }
            cv.notify_all();
        }
        cv.notify_all();
    };

    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);

    for (size_t i = 0; i < chunks.size(); ++i) {
        ChunkOutput out;
        {
            std::unique_lock lock(mu);
            cv.wait(lock, [&] { return ready.count(i) != 0 || failure; });
            if (failure) break;
            out = std::move(ready.at(i));
            ready.erase(i);
        }
        if (!commit(i, std::move(out))) {
            stop.store(true);
            break;
        }
    }
    stop.store(true);
    cv.notify_all();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

SieveReport sieve_range(const SieveTask& task_in, const SieveOptions& opts) {
    SieveTask task = task_in;
    task.canonicalize();

    Checkpoint ck;
    ck.fingerprint = task.fingerprint();
    const bool persist = !opts.checkpoint_path.empty();
    if (persist) {
        std::error_code ec;
        if (std::filesystem::exists(opts.checkpoint_path, ec)) {
            Checkpoint loaded = Checkpoint::load(opts.checkpoint_path);
            if (loaded.fingerprint != ck.fingerprint)
                throw checkpoint_error("checkpoint: fingerprint mismatch, file belongs to a different task");
            ck = std::move(loaded);
        }
    }

    std::vector<ChunkSpec> chunks;
    for (uint64_t lo = task.lo; lo < task.hi; lo += task.chunk) {
        const uint64_t hi = std::min(task.hi, lo + task.chunk);
        if (!ck.covers(lo, hi)) chunks.push_back({lo, hi});
    }

    SieveReport report;
    const uint64_t total = (task.hi - task.lo + 1) / 2;
    uint64_t committed = 0;
    bool aborted = false;

    run_chunks(
        chunks, opts.jobs,
        [&](const ChunkSpec& c) { return scan_chunk(c.lo, c.hi, task, opts.budget); },
        [&](size_t i, ChunkOutput&& out) {
            ck.done.emplace_back(chunks[i].lo, chunks[i].hi);
            ck.hits.insert(ck.hits.end(), out.hits.begin(), out.hits.end());
            ck.skipped.insert(ck.skipped.end(), out.skipped.begin(), out.skipped.end());
            if (persist) ck.save(opts.checkpoint_path);
            report.candidates_scanned += out.scanned;
            if (opts.progress) opts.progress(report.candidates_scanned, total);
            ++committed;
            if (opts.stop_after_chunks && committed >= opts.stop_after_chunks) {
                aborted = true;
                return false;
            }
            return true;
        });

    // resumed chunks may interleave with fresh ones; normalize the order
    std::sort(ck.done.begin(), ck.done.end());
    std::sort(ck.hits.begin(), ck.hits.end(),
              [](const SieveHit& a, const SieveHit& b) {
                  return a.n != b.n ? a.n < b.n : a.base < b.base;
              });
    std::sort(ck.skipped.begin(), ck.skipped.end(),
              [](const SieveSkip& a, const SieveSkip& b) { return a.n < b.n; });
    if (persist && !ck.done.empty()) ck.save(opts.checkpoint_path);

    report.hits = ck.hits;
    report.skipped = ck.skipped;
    report.complete = !aborted;
    for (uint64_t lo = task.lo; lo < task.hi && report.complete; lo += task.chunk)
        report.complete = ck.covers(lo, std::min(task.hi, lo + task.chunk));
    return report;
}

std::vector<uint64_t> first_k_primes(uint32_t k) {
    std::vector<uint64_t> primes;
    for (uint64_t p = 2; primes.size() < k; ++p)
        if (is_prime(p)) primes.push_back(p);
    return primes;
}

PsiRecord psi_search(uint32_t k, PsiKind kind, uint64_t limit, const PsiOptions& opts) {
    if (k < 1) throw precondition_error("psi_search: k must be >= 1");
    if (limit < 3) throw precondition_error("psi_search: limit must be >= 3");
    PsiRecord rec;
    rec.k = k;
    rec.kind = kind;
    rec.limit = limit;

    const std::vector<uint64_t> bases = first_k_primes(k);

    std::vector<ChunkSpec> chunks;
    for (uint64_t lo = 9; lo < limit; lo += opts.chunk)
        chunks.push_back({lo, std::min(limit, lo + opts.chunk)});

    uint64_t scanned = 0, next_progress = 10000000;

    auto scan = [&](const ChunkSpec& c) {
        ChunkOutput out;
        uint64_t n = c.lo | 1;
        for (; n < c.hi; n += 2) {
            ++out.scanned;
            const Montgomery mont(n);
            bool pass = true;
            for (uint64_t b : bases) {
                if (std::gcd(b % n, n) != 1 || !strong_probable_prime(mont, b)) {
                    pass = false;
                    break;
                }
            }
            if (!pass || is_prime(n)) continue;
            if (kind == PsiKind::psi_tilde) {
                bool midy_all = true;
                for (uint64_t b : bases) {
                    if (!check_midy_psp(n, b, opts.budget).midy) {
                        midy_all = false;
                        break;
                    }
                }
                if (!midy_all) continue;
            }
            out.hits.push_back({n, 0, true, true, kind == PsiKind::psi_tilde});
            break;  // a chunk only needs its smallest hit
        }
        return out;
    };

    run_chunks(chunks, opts.jobs, scan, [&](size_t, ChunkOutput&& out) {
        scanned += out.scanned;
        if (opts.progress && scanned >= next_progress) {
            opts.progress(scanned);
            next_progress += 10000000;
        }
        if (!out.hits.empty()) {
            rec.value = out.hits.front().n;
            return false;
        }
        return true;
    });
    return rec;
}

PsiBoundReport verify_psi_bound(uint32_t k, const FactorBudget& budget) {
    if (k < 4 || k > 8) throw precondition_error("verify_psi_bound: k must be in 4..8");
    // published psi_k values for the first k prime bases; psi_7 equals psi_8
    static constexpr uint64_t kPsi[5] = {
        3215031751ull, 2152302898747ull, 3474749660383ull,
        341550071728321ull, 341550071728321ull};

    PsiBoundReport rep;
    rep.k = k;
    rep.psi_value = kPsi[k - 4];
    rep.composite = !is_prime(rep.psi_value);
    rep.strong_to_all = true;
    const Montgomery mont(rep.psi_value);
    for (uint64_t b : first_k_primes(k)) {
        if (!strong_probable_prime(mont, b)) rep.strong_to_all = false;
        if (!check_midy_psp(rep.psi_value, b, budget).midy)
            rep.midy_fail_bases.push_back(b);
    }
    return rep;
}

RatioReport ratio_report(uint64_t bound, uint64_t base, const SieveOptions& opts) {
    if (bound < 9) throw precondition_error("ratio_report: bound must be >= 9");
    SieveTask task;
    task.lo = 9;
    task.hi = bound;
    task.bases = {base};
    task.mode = SieveMode::strong;

    SieveOptions run = opts;
    run.checkpoint_path.clear();
    const SieveReport rep = sieve_range(task, run);

    RatioReport out;
    out.bound = bound;
    out.base = base;
    for (const auto& h : rep.hits) {
        if (!h.strong) throw error("ratio_report: non-strong hit emitted by strong sieve");
        ++out.strong_count;
        if (h.midy) ++out.midy_count;
    }
    if (out.strong_count)
        out.ratio = static_cast<double>(out.midy_count) / static_cast<double>(out.strong_count);
    return out;
}

}  // namespace midylab

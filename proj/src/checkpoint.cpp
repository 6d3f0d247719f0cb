#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "midylab/sieve.hpp"

namespace midylab {

namespace {
constexpr const char* kMagic = "midylab-sieve-checkpoint 1";
}

Checkpoint Checkpoint::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw checkpoint_error("checkpoint: cannot open " + path);
    Checkpoint ck;
    std::string line;
    if (!std::getline(in, line) || line != kMagic)
        throw checkpoint_error("checkpoint: bad header in " + path);
    bool have_fp = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string tag;
        ss >> tag;
        if (tag == "fingerprint") {
            ss >> std::hex >> ck.fingerprint;
            have_fp = true;
        } else if (tag == "task") {
            // informational; the fingerprint is authoritative
        } else if (tag == "done") {
            uint64_t lo, hi;
            if (!(ss >> lo >> hi) || lo >= hi)
                throw checkpoint_error("checkpoint: bad done line: " + line);
            ck.done.emplace_back(lo, hi);
        } else if (tag == "hit") {
            SieveHit h;
            int f, s, m;
            if (!(ss >> h.n >> h.base >> f >> s >> m))
                throw checkpoint_error("checkpoint: bad hit line: " + line);
            h.fermat = f;
            h.strong = s;
            h.midy = m;
            ck.hits.push_back(h);
        } else if (tag == "skip") {
            SieveSkip sk;
            if (!(ss >> sk.n >> sk.reason))
                throw checkpoint_error("checkpoint: bad skip line: " + line);
            ck.skipped.push_back(sk);
        } else {
            throw checkpoint_error("checkpoint: unknown record '" + tag + "'");
        }
    }
    if (!have_fp) throw checkpoint_error("checkpoint: missing fingerprint in " + path);
    return ck;
}

void Checkpoint::save(const std::string& path) const {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw checkpoint_error("checkpoint: cannot write " + tmp);
        out << kMagic << '\n';
        out << "fingerprint " << std::hex << fingerprint << std::dec << '\n';
        for (const auto& [lo, hi] : done) out << "done " << lo << ' ' << hi << '\n';
        for (const auto& h : hits)
            out << "hit " << h.n << ' ' << h.base << ' ' << h.fermat << ' '
                << h.strong << ' ' << h.midy << '\n';
        for (const auto& s : skipped) out << "skip " << s.n << ' ' << s.reason << '\n';
        if (!out) throw checkpoint_error("checkpoint: write failed on " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw checkpoint_error("checkpoint: rename to " + path + " failed: " + ec.message());
}

bool Checkpoint::covers(uint64_t lo, uint64_t hi) const {
    for (const auto& [a, b] : done)
        if (a <= lo && hi <= b) return true;
    return false;
}

}  // namespace midylab

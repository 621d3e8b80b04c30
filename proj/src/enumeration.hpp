#pragma once

// Internal helpers for the tuple-enumeration hot paths. Not installed.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include "sdpspin/bitvec.hpp"
#include "sdpspin/design.hpp"

namespace sdpspin::detail {

/// Row-major packed copy of a list of equal-length bit vectors, one
/// contiguous allocation for cache-friendly tuple scans.
struct PackedRows {
    size_t n = 0;
    size_t nw = 0;
    std::vector<uint64_t> data;

    explicit PackedRows(const std::vector<BitVec>& rows) {
        n = rows.size();
        nw = rows.empty() ? 0 : rows[0].word_count();
        data.resize(n * nw);
        for (size_t i = 0; i < n; ++i) {
            std::span<const uint64_t> w = rows[i].words();
            std::copy(w.begin(), w.end(), data.begin() + static_cast<ptrdiff_t>(i * nw));
        }
    }

    const uint64_t* row(size_t i) const { return data.data() + i * nw; }
};

inline uint64_t popcount_words(const uint64_t* a, size_t nw) {
    uint64_t c = 0;
    for (size_t w = 0; w < nw; ++w) c += static_cast<uint64_t>(std::popcount(a[w]));
    return c;
}

inline uint64_t and2_popcount(const uint64_t* a, const uint64_t* b, size_t nw) {
    uint64_t c = 0;
    for (size_t w = 0; w < nw; ++w) c += static_cast<uint64_t>(std::popcount(a[w] & b[w]));
    return c;
}

inline uint64_t and3_popcount(const uint64_t* a, const uint64_t* b, const uint64_t* c, size_t nw) {
    uint64_t n = 0;
    for (size_t w = 0; w < nw; ++w) n += static_cast<uint64_t>(std::popcount(a[w] & b[w] & c[w]));
    return n;
}

inline void and2_into(const uint64_t* a, const uint64_t* b, uint64_t* out, size_t nw) {
    for (size_t w = 0; w < nw; ++w) out[w] = a[w] & b[w];
}

inline void xor2_into(const uint64_t* a, const uint64_t* b, uint64_t* out, size_t nw) {
    for (size_t w = 0; w < nw; ++w) out[w] = a[w] ^ b[w];
}

inline uint64_t xor2_popcount(const uint64_t* a, const uint64_t* b, size_t nw) {
    uint64_t c = 0;
    for (size_t w = 0; w < nw; ++w) c += static_cast<uint64_t>(std::popcount(a[w] ^ b[w]));
    return c;
}

/// Deterministic seeded RNG with unbiased bounded draws (Lemire rejection).
struct Rng {
    std::mt19937_64 gen;

    explicit Rng(uint64_t seed) : gen(seed) {}

    uint64_t below(uint64_t n) {
        uint64_t x = gen();
        __uint128_t m = static_cast<__uint128_t>(x) * n;
        auto lo = static_cast<uint64_t>(m);
        if (lo < n) {
            uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                x = gen();
                m = static_cast<__uint128_t>(x) * n;
                lo = static_cast<uint64_t>(m);
            }
        }
        return static_cast<uint64_t>(m >> 64);
    }

    /// Sorted tuple of `count` distinct indices below n.
    void distinct_sorted(uint32_t* out, int count, uint64_t n) {
        while (true) {
            for (int i = 0; i < count; ++i) out[i] = static_cast<uint32_t>(below(n));
            std::sort(out, out + count);
            bool distinct = true;
            for (int i = 1; i < count; ++i) {
                if (out[i] == out[i - 1]) {
                    distinct = false;
                    break;
                }
            }
            if (distinct) return;
        }
    }
};

/// Exact-count witness accumulator with a capped list.
struct WitnessCollector {
    uint64_t failures = 0;
    std::vector<Witness> witnesses;

    void add(Witness w) {
        ++failures;
        if (witnesses.size() < kWitnessCap) witnesses.push_back(std::move(w));
    }
};

/// Runs body(t, nthreads) on nthreads workers. Worker t owns outer indices
/// i with i % nthreads == t; each worker scans its share in canonical order,
/// so merged, sorted and capped results are identical for every thread count.
template <class Body>
void run_workers(int threads, Body body) {
    int t = std::max(1, threads);
    if (t == 1) {
        body(0, 1);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(t));
    for (int w = 0; w < t; ++w) {
        pool.emplace_back([&body, w, t] { body(w, t); });
    }
    for (std::thread& th : pool) th.join();
}

/// Merge per-worker collectors into a canonical capped witness list.
inline void merge_collectors(std::vector<WitnessCollector>& parts, ConditionReport& out) {
    std::vector<Witness> all;
    for (WitnessCollector& p : parts) {
        out.failure_count += p.failures;
        all.insert(all.end(), p.witnesses.begin(), p.witnesses.end());
    }
    std::sort(all.begin(), all.end());
    if (all.size() > kWitnessCap) all.resize(kWitnessCap);
    out.witnesses = std::move(all);
    out.pass = out.failure_count == 0;
}

inline void merge_histograms(std::vector<std::vector<uint64_t>>& parts,
                             std::vector<uint64_t>& out) {
    for (const std::vector<uint64_t>& p : parts) {
        for (size_t i = 0; i < p.size(); ++i) out[i] += p[i];
    }
}

}  // namespace sdpspin::detail

#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>

#include "enumeration.hpp"
#include "sdpspin/design.hpp"

namespace sdpspin {

namespace {

using detail::PackedRows;
using detail::WitnessCollector;

std::string histogram_to_string(const std::vector<uint64_t>& hist) {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (size_t val = 0; val < hist.size(); ++val) {
        if (hist[val] == 0) continue;
        if (!first) out << ", ";
        out << val << ":" << hist[val];
        first = false;
    }
    out << "}";
    return out.str();
}

std::string support_to_string(const std::vector<uint64_t>& hist) {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (size_t val = 0; val < hist.size(); ++val) {
        if (hist[val] == 0) continue;
        if (!first) out << ", ";
        out << val;
        first = false;
    }
    out << "}";
    return out.str();
}

// Exhaustive histogram of order-t intersection sizes, striped over threads
// by the outermost index.
std::vector<uint64_t> intersection_histogram(const PackedRows& rows, int order, int threads) {
    size_t n = rows.n;
    size_t nw = rows.nw;
    std::vector<std::vector<uint64_t>> parts(static_cast<size_t>(std::max(1, threads)));

    detail::run_workers(threads, [&](int t, int nt) {
        std::vector<uint64_t>& hist = parts[static_cast<size_t>(t)];
        hist.assign(nw * 64 + 1, 0);
        std::vector<uint64_t> buf2(nw), buf3(nw);
        for (size_t i = static_cast<size_t>(t); i < n; i += static_cast<size_t>(nt)) {
            if (order == 2) {
                for (size_t j = i + 1; j < n; ++j) {
                    hist[detail::and2_popcount(rows.row(i), rows.row(j), nw)]++;
                }
            } else if (order == 3) {
                for (size_t j = i + 1; j < n; ++j) {
                    detail::and2_into(rows.row(i), rows.row(j), buf2.data(), nw);
                    for (size_t k = j + 1; k < n; ++k) {
                        hist[detail::and2_popcount(buf2.data(), rows.row(k), nw)]++;
                    }
                }
            } else {
                for (size_t j = i + 1; j < n; ++j) {
                    detail::and2_into(rows.row(i), rows.row(j), buf2.data(), nw);
                    for (size_t k = j + 1; k < n; ++k) {
                        detail::and2_into(buf2.data(), rows.row(k), buf3.data(), nw);
                        for (size_t l = k + 1; l < n; ++l) {
                            hist[detail::and2_popcount(buf3.data(), rows.row(l), nw)]++;
                        }
                    }
                }
            }
        }
    });

    std::vector<uint64_t> hist(nw * 64 + 1, 0);
    detail::merge_histograms(parts, hist);
    return hist;
}

std::vector<uint64_t> sampled_intersection_histogram(const PackedRows& rows, int order,
                                                     uint64_t seed, uint64_t trials) {
    size_t nw = rows.nw;
    std::vector<uint64_t> hist(nw * 64 + 1, 0);
    detail::Rng rng(seed);
    std::array<uint32_t, 4> idx{};
    std::vector<uint64_t> buf(nw);
    for (uint64_t t = 0; t < trials; ++t) {
        rng.distinct_sorted(idx.data(), order, rows.n);
        detail::and2_into(rows.row(idx[0]), rows.row(idx[1]), buf.data(), nw);
        for (int s = 2; s < order; ++s) {
            detail::and2_into(buf.data(), rows.row(idx[static_cast<size_t>(s)]), buf.data(), nw);
        }
        hist[detail::popcount_words(buf.data(), nw)]++;
    }
    return hist;
}

}  // namespace

SpectrumReport spectrum(const Design& d, int order, const EnumMode& mode, int threads) {
    if (order < 2 || order > 4) throw std::invalid_argument("spectrum: order must be 2, 3 or 4");
    if (static_cast<uint32_t>(order) > d.b()) {
        throw std::invalid_argument("spectrum: order exceeds block count");
    }

    PackedRows rows(d.blocks());
    SpectrumReport report;
    report.order = order;
    report.exhaustive = mode.exhaustive;

    std::vector<uint64_t> hist;
    if (mode.exhaustive) {
        hist = intersection_histogram(rows, order, threads);
    } else {
        hist = sampled_intersection_histogram(rows, order, mode.seed, mode.trials);
        report.seed = mode.seed;
        report.trials = mode.trials;
    }
    for (size_t val = 0; val < hist.size(); ++val) {
        if (hist[val] != 0) report.counts[static_cast<long long>(val)] = hist[val];
    }
    return report;
}

ConditionReport sdp_check_three_sums(const Design& d, int threads) {
    ConditionReport report;
    report.name = "sdp_three_sums";

    uint32_t b = d.b();
    PackedRows rows(d.blocks());
    size_t nw = rows.nw;

    // Lookup table of blocks and block complements, sorted by content.
    std::vector<BitVec> members;
    members.reserve(2 * b);
    for (const BitVec& blk : d.blocks()) {
        members.push_back(blk);
        members.push_back(blk.complement());
    }
    PackedRows member_rows(members);
    std::vector<uint32_t> ordered(member_rows.n);
    for (uint32_t i = 0; i < member_rows.n; ++i) ordered[i] = i;
    auto content_less = [&](uint32_t a, const uint64_t* w) {
        const uint64_t* aw = member_rows.row(a);
        return std::lexicographical_compare(aw, aw + nw, w, w + nw);
    };
    std::sort(ordered.begin(), ordered.end(), [&](uint32_t a, uint32_t c) {
        return content_less(a, member_rows.row(c));
    });
    auto is_member = [&](const uint64_t* w) {
        auto it = std::lower_bound(ordered.begin(), ordered.end(), w, content_less);
        if (it == ordered.end()) return false;
        const uint64_t* found = member_rows.row(*it);
        return std::equal(found, found + nw, w);
    };

    std::vector<WitnessCollector> parts(static_cast<size_t>(std::max(1, threads)));
    detail::run_workers(threads, [&](int t, int nt) {
        WitnessCollector& bad = parts[static_cast<size_t>(t)];
        std::vector<uint64_t> buf2(nw), buf3(nw);
        for (uint32_t i = static_cast<uint32_t>(t); i < b; i += static_cast<uint32_t>(nt)) {
            for (uint32_t j = i + 1; j < b; ++j) {
                detail::xor2_into(rows.row(i), rows.row(j), buf2.data(), nw);
                for (uint32_t k = j + 1; k < b; ++k) {
                    detail::xor2_into(buf2.data(), rows.row(k), buf3.data(), nw);
                    if (!is_member(buf3.data())) {
                        bad.add({"three_sum_not_block",
                                 {i, j, k},
                                 static_cast<long long>(detail::popcount_words(buf3.data(), nw))});
                    }
                }
            }
        }
    });
    detail::merge_collectors(parts, report);
    return report;
}

ConditionReport sdp_check_four_sums(const Design& d, int threads) {
    if (!d.params().sdp_shape) {
        throw std::invalid_argument("sdp_check_four_sums: sdp-shaped parameters required");
    }
    uint64_t u = d.params().sdp_shape->u;
    const std::array<uint64_t, 3> allowed{0, 2 * u * u, 4 * u * u};

    ConditionReport report;
    report.name = "sdp_four_sums";

    uint32_t b = d.b();
    PackedRows rows(d.blocks());
    size_t nw = rows.nw;

    int nthreads = std::max(1, threads);
    std::vector<WitnessCollector> parts(static_cast<size_t>(nthreads));
    std::vector<std::vector<uint64_t>> hists(static_cast<size_t>(nthreads));
    detail::run_workers(threads, [&](int t, int nt) {
        WitnessCollector& bad = parts[static_cast<size_t>(t)];
        std::vector<uint64_t>& hist = hists[static_cast<size_t>(t)];
        hist.assign(nw * 64 + 1, 0);
        std::vector<uint64_t> buf2(nw), buf3(nw);
        for (uint32_t i = static_cast<uint32_t>(t); i < b; i += static_cast<uint32_t>(nt)) {
            for (uint32_t j = i + 1; j < b; ++j) {
                detail::xor2_into(rows.row(i), rows.row(j), buf2.data(), nw);
                for (uint32_t k = j + 1; k < b; ++k) {
                    detail::xor2_into(buf2.data(), rows.row(k), buf3.data(), nw);
                    for (uint32_t l = k + 1; l < b; ++l) {
                        uint64_t w = detail::xor2_popcount(buf3.data(), rows.row(l), nw);
                        hist[w]++;
                        if (w != allowed[0] && w != allowed[1] && w != allowed[2]) {
                            bad.add({"four_sum_weight", {i, j, k, l}, static_cast<long long>(w)});
                        }
                    }
                }
            }
        }
    });
    detail::merge_collectors(parts, report);

    std::vector<uint64_t> hist(nw * 64 + 1, 0);
    detail::merge_histograms(hists, hist);
    report.details["allowed_weights"] =
        "{0, " + std::to_string(allowed[1]) + ", " + std::to_string(allowed[2]) + "}";
    report.details["observed_weights"] = histogram_to_string(hist);
    return report;
}

namespace {

// Triple-intersection scan collecting a histogram plus witnesses for sizes
// outside the admissible set.
void scan_triples(const PackedRows& rows, const std::vector<long long>& admissible, int threads,
                  std::vector<uint64_t>& hist_out, ConditionReport& report,
                  const char* witness_kind) {
    size_t n = rows.n;
    size_t nw = rows.nw;
    int nthreads = std::max(1, threads);
    std::vector<WitnessCollector> parts(static_cast<size_t>(nthreads));
    std::vector<std::vector<uint64_t>> hists(static_cast<size_t>(nthreads));

    detail::run_workers(threads, [&](int t, int nt) {
        WitnessCollector& bad = parts[static_cast<size_t>(t)];
        std::vector<uint64_t>& hist = hists[static_cast<size_t>(t)];
        hist.assign(nw * 64 + 1, 0);
        std::vector<uint64_t> buf2(nw);
        for (size_t i = static_cast<size_t>(t); i < n; i += static_cast<size_t>(nt)) {
            for (size_t j = i + 1; j < n; ++j) {
                detail::and2_into(rows.row(i), rows.row(j), buf2.data(), nw);
                for (size_t k = j + 1; k < n; ++k) {
                    auto size =
                        static_cast<long long>(detail::and2_popcount(buf2.data(), rows.row(k), nw));
                    hist[static_cast<size_t>(size)]++;
                    if (std::find(admissible.begin(), admissible.end(), size) ==
                        admissible.end()) {
                        bad.add({witness_kind,
                                 {static_cast<uint32_t>(i), static_cast<uint32_t>(j),
                                  static_cast<uint32_t>(k)},
                                 size});
                    }
                }
            }
        }
    });
    detail::merge_collectors(parts, report);
    hist_out.assign(nw * 64 + 1, 0);
    detail::merge_histograms(hists, hist_out);
}

}  // namespace

ConditionReport check_condition1(const Design& d, int threads) {
    ConditionReport report;
    report.name = "condition1";

    PackedRows rows(d.blocks());
    std::vector<uint64_t> hist;

    if (d.params().sdp_shape) {
        uint64_t u = d.params().sdp_shape->u;
        long long x = static_cast<long long>(u * u / 2 - u);
        long long y = static_cast<long long>(u * u / 2 - u / 2);
        scan_triples(rows, {x, y}, threads, hist, report, "triple_intersection");
        report.details["expected_x"] = std::to_string(x);
        report.details["expected_y"] = std::to_string(y);
    } else {
        // Generic quasi-3 check: at most two sizes may occur. Witnesses are
        // the triples falling outside the two most frequent sizes.
        ConditionReport scratch;
        scan_triples(rows, {}, threads, hist, scratch, "triple_intersection");
        size_t distinct = 0;
        for (uint64_t c : hist) {
            if (c != 0) ++distinct;
        }
        if (distinct <= 2) {
            report.pass = true;
        } else {
            std::vector<std::pair<uint64_t, long long>> ranked;  // (count, value)
            for (size_t val = 0; val < hist.size(); ++val) {
                if (hist[val] != 0) ranked.emplace_back(hist[val], static_cast<long long>(val));
            }
            std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
                if (a.first != b.first) return a.first > b.first;
                return a.second < b.second;
            });
            std::vector<long long> keep{ranked[0].second, ranked[1].second};
            std::vector<uint64_t> ignored;
            scan_triples(rows, keep, threads, ignored, report, "triple_intersection");
        }
        report.details["mode"] = "generic";
    }

    report.details["observed_support"] = support_to_string(hist);
    report.details["observed_sizes"] = histogram_to_string(hist);
    return report;
}

namespace {

// Colex rank tables for triples i < j < k: rank = i + C(j,2) + C(k,3).
struct TripleRank {
    std::vector<size_t> c2, c3;

    explicit TripleRank(size_t n) : c2(n), c3(n) {
        for (size_t j = 0; j < n; ++j) c2[j] = j * (j - 1) / 2;
        for (size_t k = 0; k < n; ++k) c3[k] = k * (k - 1) * (k - 2) / 6;
    }

    size_t count(size_t n) const { return n * (n - 1) * (n - 2) / 6; }
};

}  // namespace

ConditionReport check_condition2(const Design& d, Cond2Mode mode, int threads) {
    if (!d.params().sdp_shape) {
        throw std::invalid_argument("check_condition2: sdp-shaped parameters required");
    }
    int m = d.params().sdp_shape->m;
    uint64_t u = d.params().sdp_shape->u;

    ConditionReport report;
    report.name = mode == Cond2Mode::parity ? "condition2_parity" : "condition2_divisibility";

    uint32_t b = d.b();
    PackedRows rows(d.blocks());
    size_t nw = rows.nw;
    int nthreads = std::max(1, threads);
    std::vector<WitnessCollector> parts(static_cast<size_t>(nthreads));

    if (mode == Cond2Mode::parity) {
        if (b > 512) {
            throw std::invalid_argument(
                "check_condition2: parity mode limited to at most 512 blocks");
        }
        long long x = static_cast<long long>(u * u / 2 - u);

        // One byte per triple: 1 iff its intersection size equals x.
        TripleRank rank(b);
        std::vector<uint8_t> is_x(rank.count(b));
        {
            std::vector<uint64_t> buf2(nw);
            for (size_t i = 0; i < b; ++i) {
                for (size_t j = i + 1; j < b; ++j) {
                    detail::and2_into(rows.row(i), rows.row(j), buf2.data(), nw);
                    size_t base = i + rank.c2[j];
                    for (size_t k = j + 1; k < b; ++k) {
                        auto size = static_cast<long long>(
                            detail::and2_popcount(buf2.data(), rows.row(k), nw));
                        is_x[base + rank.c3[k]] = size == x ? 1 : 0;
                    }
                }
            }
        }

        detail::run_workers(threads, [&](int t, int nt) {
            WitnessCollector& bad = parts[static_cast<size_t>(t)];
            for (size_t i = static_cast<size_t>(t); i < b; i += static_cast<size_t>(nt)) {
                for (size_t j = i + 1; j < b; ++j) {
                    size_t r_ij = i + rank.c2[j];
                    for (size_t k = j + 1; k < b; ++k) {
                        uint8_t t_ijk = is_x[r_ij + rank.c3[k]];
                        size_t r_ik = i + rank.c2[k];
                        size_t r_jk = j + rank.c2[k];
                        for (size_t l = k + 1; l < b; ++l) {
                            size_t c3l = rank.c3[l];
                            uint8_t t_ijl = is_x[r_ij + c3l];
                            uint8_t t_ikl = is_x[r_ik + c3l];
                            uint8_t t_jkl = is_x[r_jk + c3l];
                            if ((t_ijk ^ t_ijl ^ t_ikl ^ t_jkl) != 0) {
                                long long n_x = t_ijk + t_ijl + t_ikl + t_jkl;
                                bad.add({"odd_x_count",
                                         {static_cast<uint32_t>(i), static_cast<uint32_t>(j),
                                          static_cast<uint32_t>(k), static_cast<uint32_t>(l)},
                                         n_x});
                            }
                        }
                    }
                }
            }
        });
        report.details["x"] = std::to_string(x);
    } else {
        uint64_t divisor = uint64_t{1} << (m - 2);
        detail::run_workers(threads, [&](int t, int nt) {
            WitnessCollector& bad = parts[static_cast<size_t>(t)];
            std::vector<uint64_t> buf2(nw), buf3(nw);
            for (uint32_t i = static_cast<uint32_t>(t); i < b; i += static_cast<uint32_t>(nt)) {
                for (uint32_t j = i + 1; j < b; ++j) {
                    detail::and2_into(rows.row(i), rows.row(j), buf2.data(), nw);
                    for (uint32_t k = j + 1; k < b; ++k) {
                        detail::and2_into(buf2.data(), rows.row(k), buf3.data(), nw);
                        for (uint32_t l = k + 1; l < b; ++l) {
                            uint64_t q = detail::and2_popcount(buf3.data(), rows.row(l), nw);
                            if (q % divisor != 0) {
                                bad.add({"quadruple_intersection",
                                         {i, j, k, l},
                                         static_cast<long long>(q)});
                            }
                        }
                    }
                }
            }
        });
        report.details["divisor"] = std::to_string(divisor);
    }

    detail::merge_collectors(parts, report);
    return report;
}

ConditionReport mw_criterion(const Design& derived, int m) {
    if (m < 2) throw std::invalid_argument("mw_criterion: m must be at least 2");
    uint64_t expected_v = (uint64_t{1} << (2 * m - 1)) - (uint64_t{1} << (m - 1));
    uint64_t expected_b = (uint64_t{1} << (2 * m)) - 1;
    if (derived.v() != expected_v || derived.b() != expected_b) {
        throw std::invalid_argument("mw_criterion: parameter mismatch with derived-design shape");
    }
    uint64_t divisor = uint64_t{1} << (m - 2);

    ConditionReport report;
    report.name = "mw_criterion";
    report.details["divisor"] = std::to_string(divisor);

    PackedRows rows(derived.blocks());
    size_t nw = rows.nw;
    uint32_t b = derived.b();
    detail::WitnessCollector bad;
    std::vector<uint64_t> buf2(nw);
    for (uint32_t i = 0; i < b; ++i) {
        for (uint32_t j = i + 1; j < b; ++j) {
            detail::and2_into(rows.row(i), rows.row(j), buf2.data(), nw);
            for (uint32_t k = j + 1; k < b; ++k) {
                uint64_t q = detail::and2_popcount(buf2.data(), rows.row(k), nw);
                if (q % divisor != 0) {
                    bad.add({"triple_intersection", {i, j, k}, static_cast<long long>(q)});
                }
            }
        }
    }
    std::vector<detail::WitnessCollector> parts{std::move(bad)};
    detail::merge_collectors(parts, report);
    return report;
}

ConditionReport check_condition3(const Design& d, const Correspondence& phi, const EnumMode& mode,
                                 int threads) {
    if (d.b() != d.v()) throw std::invalid_argument("check_condition3: design is not square");
    if (!phi.is_bijection(d.v())) {
        throw std::invalid_argument("check_condition3: correspondence is not a bijection");
    }

    ConditionReport report;
    report.name = "condition3";

    uint32_t v = d.v();
    PackedRows cols(d.columns());
    PackedRows rows(d.blocks());
    size_t nw_c = cols.nw;
    size_t nw_r = rows.nw;
    const std::vector<uint32_t>& p = phi.phi;

    if (mode.exhaustive) {
        int nthreads = std::max(1, threads);
        std::vector<WitnessCollector> parts(static_cast<size_t>(nthreads));
        detail::run_workers(threads, [&](int t, int nt) {
            WitnessCollector& bad = parts[static_cast<size_t>(t)];
            std::vector<uint64_t> cbuf(nw_c);
            for (uint32_t a = static_cast<uint32_t>(t); a < v; a += static_cast<uint32_t>(nt)) {
                for (uint32_t bb = a + 1; bb < v; ++bb) {
                    detail::and2_into(cols.row(a), cols.row(bb), cbuf.data(), nw_c);
                    for (uint32_t c = bb + 1; c < v; ++c) {
                        auto left = static_cast<long long>(
                            detail::and2_popcount(cbuf.data(), cols.row(c), nw_c));
                        auto right = static_cast<long long>(detail::and3_popcount(
                            rows.row(p[a]), rows.row(p[bb]), rows.row(p[c]), nw_r));
                        if (left != right) {
                            bad.add({"triple_mismatch", {a, bb, c}, left - right});
                        }
                    }
                }
            }
        });
        detail::merge_collectors(parts, report);
        report.details["triples_examined"] =
            std::to_string(static_cast<uint64_t>(v) * (v - 1) * (v - 2) / 6);
    } else {
        detail::Rng rng(mode.seed);
        detail::WitnessCollector bad;
        std::array<uint32_t, 3> idx{};
        for (uint64_t t = 0; t < mode.trials; ++t) {
            rng.distinct_sorted(idx.data(), 3, v);
            auto left = static_cast<long long>(detail::and3_popcount(
                cols.row(idx[0]), cols.row(idx[1]), cols.row(idx[2]), nw_c));
            auto right = static_cast<long long>(detail::and3_popcount(
                rows.row(p[idx[0]]), rows.row(p[idx[1]]), rows.row(p[idx[2]]), nw_r));
            if (left != right) {
                bad.add({"triple_mismatch", {idx[0], idx[1], idx[2]}, left - right});
            }
        }
        std::vector<detail::WitnessCollector> parts{std::move(bad)};
        detail::merge_collectors(parts, report);
        report.details["seed"] = std::to_string(mode.seed);
        report.details["triples_examined"] = std::to_string(mode.trials);
    }
    return report;
}

}  // namespace sdpspin

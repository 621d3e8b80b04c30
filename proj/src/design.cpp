#include "sdpspin/design.hpp"

#include <bit>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "enumeration.hpp"

namespace sdpspin {

namespace {

// Most frequent value of a histogram; ties go to the smaller value.
std::optional<uint32_t> modal_value(const std::vector<uint64_t>& hist) {
    uint64_t best = 0;
    std::optional<uint32_t> arg;
    for (size_t val = 0; val < hist.size(); ++val) {
        if (hist[val] > best) {
            best = hist[val];
            arg = static_cast<uint32_t>(val);
        }
    }
    return arg;
}

std::optional<SdpShape> detect_sdp_shape(uint32_t v, std::optional<uint32_t> k,
                                         std::optional<uint32_t> lambda) {
    if (!k || !lambda || v < 16) return std::nullopt;
    if (!std::has_single_bit(v)) return std::nullopt;
    int log2v = std::countr_zero(v);
    if (log2v % 2 != 0) return std::nullopt;
    int m = log2v / 2;  // v = 2^(2m), m >= 2
    uint32_t u = uint32_t{1} << (m - 1);
    if (*k != 2 * u * u - u || *lambda != u * u - u) return std::nullopt;
    return SdpShape{m, u};
}

}  // namespace

Design Design::from_blocks(uint32_t v, std::vector<BitVec> blocks) {
    if (v == 0) throw std::invalid_argument("Design: v must be positive");
    if (blocks.empty()) throw std::invalid_argument("Design: empty block list");
    for (const BitVec& blk : blocks) {
        if (blk.length() != v) throw std::invalid_argument("Design: block length differs from v");
    }

    Design d;
    d.v_ = v;
    d.blocks_ = std::move(blocks);
    uint32_t b = d.b();

    d.columns_.assign(v, BitVec(b));
    for (uint32_t q = 0; q < b; ++q) {
        std::span<const uint64_t> w = d.blocks_[q].words();
        for (size_t wi = 0; wi < w.size(); ++wi) {
            uint64_t word = w[wi];
            while (word != 0) {
                uint32_t p = static_cast<uint32_t>(wi * 64 + std::countr_zero(word));
                d.columns_[p].set(q, true);
                word &= word - 1;
            }
        }
    }

    DesignParams& params = d.params_;
    params.v = v;
    params.b = b;

    std::vector<uint64_t> weight_hist(v + 1, 0);
    for (const BitVec& blk : d.blocks_) weight_hist[blk.count()]++;
    params.k = modal_value(weight_hist);

    if (v >= 2) {
        detail::PackedRows cols(d.columns_);
        std::vector<uint64_t> cover_hist(b + 1, 0);
        for (uint32_t p = 0; p < v; ++p) {
            for (uint32_t q = p + 1; q < v; ++q) {
                cover_hist[detail::and2_popcount(cols.row(p), cols.row(q), cols.nw)]++;
            }
        }
        params.lambda = modal_value(cover_hist);
    }

    params.sdp_shape = detect_sdp_shape(v, params.k, params.lambda);
    return d;
}

Correspondence Correspondence::identity(uint32_t v) {
    Correspondence c;
    c.phi.resize(v);
    std::iota(c.phi.begin(), c.phi.end(), 0u);
    return c;
}

bool Correspondence::is_bijection(uint32_t v) const {
    if (phi.size() != v) return false;
    std::vector<bool> seen(v, false);
    for (uint32_t img : phi) {
        if (img >= v || seen[img]) return false;
        seen[img] = true;
    }
    return true;
}

ConditionReport validate_square_2design(const Design& d) {
    if (d.v() < 2) throw std::invalid_argument("validate_square_2design: design too small");

    ConditionReport report;
    report.name = "square_2design";

    uint32_t v = d.v();
    uint32_t b = d.b();
    uint32_t k = d.params().k.value();
    uint32_t lambda = d.params().lambda.value();

    detail::WitnessCollector bad;

    if (b != v) bad.add({"block_count", {}, static_cast<long long>(b)});

    for (uint32_t i = 0; i < b; ++i) {
        uint64_t w = d.block(i).count();
        if (w != k) bad.add({"block_weight", {i}, static_cast<long long>(w)});
    }

    {
        std::unordered_set<BitVec, BitVecHash> seen;
        seen.reserve(b * 2);
        for (uint32_t i = 0; i < b; ++i) {
            if (!seen.insert(d.block(i)).second) {
                bad.add({"duplicate_block", {i}, 0});
            }
        }
    }

    detail::PackedRows rows(d.blocks());
    for (uint32_t i = 0; i < b; ++i) {
        for (uint32_t j = i + 1; j < b; ++j) {
            uint64_t s = detail::and2_popcount(rows.row(i), rows.row(j), rows.nw);
            if (s != lambda) {
                bad.add({"block_pair_intersection", {i, j}, static_cast<long long>(s)});
            }
        }
    }

    detail::PackedRows cols(d.columns());
    for (uint32_t p = 0; p < v; ++p) {
        for (uint32_t q = p + 1; q < v; ++q) {
            uint64_t c = detail::and2_popcount(cols.row(p), cols.row(q), cols.nw);
            if (c != lambda) {
                bad.add({"point_pair_coverage", {p, q}, static_cast<long long>(c)});
            }
        }
    }

    std::vector<detail::WitnessCollector> parts{std::move(bad)};
    detail::merge_collectors(parts, report);

    report.details["v"] = std::to_string(v);
    report.details["b"] = std::to_string(b);
    report.details["k"] = std::to_string(k);
    report.details["lambda"] = std::to_string(lambda);
    if (d.params().sdp_shape) {
        report.details["sdp_m"] = std::to_string(d.params().sdp_shape->m);
        report.details["sdp_u"] = std::to_string(d.params().sdp_shape->u);
    }
    return report;
}

Design derived_design(const Design& d, uint32_t block_index) {
    if (block_index >= d.b()) throw std::out_of_range("derived_design: block index out of range");

    const BitVec& base = d.block(block_index);
    std::vector<uint32_t> points;
    points.reserve(base.count());
    for (uint32_t p = 0; p < d.v(); ++p) {
        if (base.get(p)) points.push_back(p);
    }
    if (points.empty()) throw std::invalid_argument("derived_design: empty base block");

    uint32_t nv = static_cast<uint32_t>(points.size());
    std::vector<BitVec> nblocks;
    nblocks.reserve(d.b() - 1);
    for (uint32_t j = 0; j < d.b(); ++j) {
        if (j == block_index) continue;
        BitVec nb(nv);
        for (uint32_t t = 0; t < nv; ++t) {
            if (d.block(j).get(points[t])) nb.set(t, true);
        }
        nblocks.push_back(std::move(nb));
    }
    return Design::from_blocks(nv, std::move(nblocks));
}

Design dual_design(const Design& d) {
    if (d.b() != d.v()) throw std::invalid_argument("dual_design: design is not square");
    return Design::from_blocks(d.b(), d.columns());
}

ConditionReport check_polarity(const Design& d, const Correspondence& phi) {
    if (d.b() != d.v()) throw std::invalid_argument("check_polarity: design is not square");
    if (!phi.is_bijection(d.v())) {
        throw std::invalid_argument("check_polarity: correspondence is not a bijection");
    }

    ConditionReport report;
    report.name = "polarity";

    // Symmetry of S(p,q) = [q in phi(p)] is exactly the two defining
    // properties of a polarity.
    detail::WitnessCollector bad;
    uint32_t v = d.v();
    for (uint32_t p = 0; p < v; ++p) {
        const BitVec& row_p = d.block(phi.phi[p]);
        for (uint32_t q = p + 1; q < v; ++q) {
            bool s_pq = row_p.get(q);
            bool s_qp = d.block(phi.phi[q]).get(p);
            if (s_pq != s_qp) {
                bad.add({"asymmetric_pair", {p, q}, s_pq ? 1 : 0});
            }
        }
    }

    std::vector<detail::WitnessCollector> parts{std::move(bad)};
    detail::merge_collectors(parts, report);
    return report;
}

}  // namespace sdpspin

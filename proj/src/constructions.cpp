#include "sdpspin/constructions.hpp"

#include <bit>
#include <cstdlib>
#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

#include "enumeration.hpp"

namespace sdpspin {

GroupTable GroupTable::from_table(uint32_t order, std::vector<uint32_t> table) {
    if (order == 0) throw std::invalid_argument("GroupTable: order must be positive");
    if (table.size() != static_cast<size_t>(order) * order) {
        throw std::invalid_argument("GroupTable: table size does not match order");
    }
    for (uint32_t x : table) {
        if (x >= order) throw std::invalid_argument("GroupTable: element index out of range");
    }

    GroupTable g;
    g.order = order;
    g.table = std::move(table);

    for (uint32_t i = 0; i < order; ++i) {
        if (g.mul(0, i) != i || g.mul(i, 0) != i) {
            throw std::invalid_argument("GroupTable: element 0 is not an identity");
        }
    }
    g.inv_.assign(order, order);
    for (uint32_t i = 0; i < order; ++i) {
        for (uint32_t j = 0; j < order; ++j) {
            if (g.mul(i, j) == 0) {
                if (g.mul(j, i) != 0) {
                    throw std::invalid_argument("GroupTable: one-sided inverse");
                }
                g.inv_[i] = j;
            }
        }
        if (g.inv_[i] == order) throw std::invalid_argument("GroupTable: missing inverse");
    }
    for (uint32_t i = 0; i < order; ++i) {
        for (uint32_t j = 0; j < order; ++j) {
            for (uint32_t k = 0; k < order; ++k) {
                if (g.mul(g.mul(i, j), k) != g.mul(i, g.mul(j, k))) {
                    throw std::invalid_argument("GroupTable: multiplication is not associative");
                }
            }
        }
    }
    return g;
}

GroupTable GroupTable::parse(std::istream& in, const std::string& source_name) {
    uint32_t order = 0;
    if (!(in >> order) || order == 0) {
        throw std::runtime_error(source_name + ": expected positive group order on line 1");
    }
    std::vector<uint32_t> table(static_cast<size_t>(order) * order);
    for (size_t i = 0; i < table.size(); ++i) {
        if (!(in >> table[i])) {
            throw std::runtime_error(source_name + ": truncated multiplication table");
        }
    }
    return from_table(order, std::move(table));
}

HadamardMatrix kronecker_power_base4(int m) {
    if (m < 1) throw std::invalid_argument("kronecker_power_base4: m must be at least 1");
    if (m > 6) throw std::invalid_argument("kronecker_power_base4: m larger than 6 not supported");

    HadamardMatrix base = HadamardMatrix::zeros(4);
    for (uint32_t i = 0; i < 4; ++i) base.at(i, i) = -1;

    HadamardMatrix acc = base;
    for (int step = 1; step < m; ++step) {
        uint32_t n = acc.n * 4;
        HadamardMatrix next = HadamardMatrix::zeros(n);
        for (uint32_t i = 0; i < n; ++i) {
            for (uint32_t j = 0; j < n; ++j) {
                next.at(i, j) = static_cast<int8_t>(base.at(i / acc.n, j / acc.n) *
                                                    acc.at(i % acc.n, j % acc.n));
            }
        }
        acc = std::move(next);
    }
    return acc;
}

namespace {

// Q0(z) over GF(2)^(2m) with little-endian encoding: parity of the number of
// coordinate pairs (2t, 2t+1) where both bits are set.
bool quadratic_form_q0(uint64_t z) {
    constexpr uint64_t even_positions = 0x5555555555555555ull;
    return (std::popcount(z & (z >> 1) & even_positions) & 1) != 0;
}

}  // namespace

std::pair<Design, Correspondence> symplectic_design(int m, SymplecticMethod method) {
    if (m < 2) throw std::invalid_argument("symplectic_design: m must be at least 2");
    if (m > 6) throw std::invalid_argument("symplectic_design: m larger than 6 not supported");

    if (method == SymplecticMethod::kronecker) {
        Design d = hadamard_to_design(kronecker_power_base4(m));
        Correspondence phi = Correspondence::identity(d.v());
        return {std::move(d), std::move(phi)};
    }

    uint32_t v = uint32_t{1} << (2 * m);
    std::vector<BitVec> blocks;
    blocks.reserve(v);
    for (uint32_t a = 0; a < v; ++a) {
        BitVec blk(v);
        for (uint32_t x = 0; x < v; ++x) {
            if (quadratic_form_q0(x ^ a)) blk.set(x, true);
        }
        blocks.push_back(std::move(blk));
    }
    Design d = Design::from_blocks(v, std::move(blocks));
    return {std::move(d), Correspondence::identity(v)};
}

ConditionReport regular_hadamard_check(const HadamardMatrix& h) {
    uint32_t n = h.n;
    if (n == 0) throw std::invalid_argument("regular_hadamard_check: empty matrix");
    for (int8_t e : h.entries) {
        if (e != 1 && e != -1) {
            throw std::invalid_argument("regular_hadamard_check: entries must be +1 or -1");
        }
    }

    ConditionReport report;
    report.name = "regular_hadamard";
    detail::WitnessCollector bad;

    long long rowsum0 = 0;
    for (uint32_t j = 0; j < n; ++j) rowsum0 += h.at(0, j);
    for (uint32_t i = 0; i < n; ++i) {
        long long s = 0;
        for (uint32_t j = 0; j < n; ++j) s += h.at(i, j);
        if (s != rowsum0) bad.add({"row_sum", {i}, s});
    }
    if (rowsum0 * rowsum0 != static_cast<long long>(n)) {
        bad.add({"row_sum_square", {}, rowsum0});
    }

    for (uint32_t i = 0; i < n; ++i) {
        for (uint32_t j = i; j < n; ++j) {
            long long dot = 0;
            for (uint32_t c = 0; c < n; ++c) {
                dot += static_cast<long long>(h.at(i, c)) * h.at(j, c);
            }
            long long expect = i == j ? static_cast<long long>(n) : 0;
            if (dot != expect) bad.add({"row_pair_dot", {i, j}, dot});
        }
    }

    std::vector<detail::WitnessCollector> parts{std::move(bad)};
    detail::merge_collectors(parts, report);
    report.details["n"] = std::to_string(n);
    report.details["rowsum"] = std::to_string(rowsum0);
    if (report.pass) {
        report.details["u"] = std::to_string(std::abs(rowsum0) / 2);
    }
    return report;
}

Design hadamard_to_design(const HadamardMatrix& h) {
    ConditionReport check = regular_hadamard_check(h);
    if (!check.pass) {
        throw std::invalid_argument("hadamard_to_design: not a regular Hadamard matrix");
    }

    long long rowsum = 0;
    for (uint32_t j = 0; j < h.n; ++j) rowsum += h.at(0, j);
    int8_t one_value = rowsum < 0 ? 1 : -1;  // negate first if the row sum is negative

    std::vector<BitVec> blocks;
    blocks.reserve(h.n);
    for (uint32_t i = 0; i < h.n; ++i) {
        BitVec blk(h.n);
        for (uint32_t j = 0; j < h.n; ++j) {
            if (h.at(i, j) == one_value) blk.set(j, true);
        }
        blocks.push_back(std::move(blk));
    }
    return Design::from_blocks(h.n, std::move(blocks));
}

HadamardMatrix design_to_pm1(const Design& d) {
    if (d.b() != d.v()) throw std::invalid_argument("design_to_pm1: design is not square");
    HadamardMatrix h = HadamardMatrix::zeros(d.v());
    for (uint32_t i = 0; i < d.v(); ++i) {
        for (uint32_t j = 0; j < d.v(); ++j) {
            h.at(i, j) = d.block(i).get(j) ? -1 : 1;
        }
    }
    return h;
}

namespace {

// Difference-multiset counts; cnt[g] = #{(s,t) : s != t in S, s t^-1 = g}.
std::vector<uint64_t> difference_counts(const GroupTable& g, const std::vector<uint32_t>& s) {
    std::vector<uint64_t> cnt(g.order, 0);
    for (uint32_t a : s) {
        for (uint32_t b : s) {
            if (a == b) continue;
            cnt[g.mul(a, g.inverse(b))]++;
        }
    }
    return cnt;
}

bool is_difference_set(const GroupTable& g, const std::vector<uint32_t>& s, uint32_t lambda) {
    std::vector<uint64_t> cnt = difference_counts(g, s);
    for (uint32_t e = 1; e < g.order; ++e) {
        if (cnt[e] != lambda) return false;
    }
    return true;
}

}  // namespace

Design develop_difference_set(const GroupTable& g, const std::vector<uint32_t>& s) {
    if (s.empty()) throw std::invalid_argument("develop_difference_set: empty set");
    for (uint32_t e : s) {
        if (e >= g.order) throw std::invalid_argument("develop_difference_set: element out of range");
    }
    {
        std::vector<bool> seen(g.order, false);
        for (uint32_t e : s) {
            if (seen[e]) throw std::invalid_argument("develop_difference_set: repeated element");
            seen[e] = true;
        }
    }

    uint64_t k = s.size();
    uint64_t v = g.order;
    if (v < 2 || (k * (k - 1)) % (v - 1) != 0) {
        throw std::invalid_argument("develop_difference_set: k(k-1) not divisible by v-1");
    }
    uint64_t lambda = k * (k - 1) / (v - 1);

    std::vector<uint64_t> cnt = difference_counts(g, s);
    for (uint32_t e = 1; e < g.order; ++e) {
        if (cnt[e] != lambda) {
            std::ostringstream msg;
            msg << "develop_difference_set: element " << e << " covered " << cnt[e]
                << " times, expected " << lambda;
            throw std::invalid_argument(msg.str());
        }
    }

    std::vector<BitVec> blocks;
    blocks.reserve(g.order);
    for (uint32_t t = 0; t < g.order; ++t) {
        BitVec blk(g.order);
        for (uint32_t e : s) blk.set(g.mul(t, e), true);
        blocks.push_back(std::move(blk));
    }
    return Design::from_blocks(g.order, std::move(blocks));
}

std::vector<std::vector<uint32_t>> find_difference_sets(const GroupTable& g, uint32_t k,
                                                        uint32_t lambda, size_t limit) {
    if (g.order > 32) {
        throw std::invalid_argument("find_difference_sets: exhaustive scan limited to order 32");
    }
    if (k == 0 || k > g.order) throw std::invalid_argument("find_difference_sets: bad subset size");

    std::vector<std::vector<uint32_t>> found;
    std::vector<uint32_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0u);
    while (found.size() < limit) {
        if (is_difference_set(g, idx, lambda)) found.push_back(idx);

        // next k-combination of {0..order-1} in lexicographic order
        int pos = static_cast<int>(k) - 1;
        while (pos >= 0 && idx[static_cast<size_t>(pos)] ==
                               g.order - k + static_cast<uint32_t>(pos)) {
            --pos;
        }
        if (pos < 0) break;
        ++idx[static_cast<size_t>(pos)];
        for (size_t t = static_cast<size_t>(pos) + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
    }
    return found;
}

}  // namespace sdpspin

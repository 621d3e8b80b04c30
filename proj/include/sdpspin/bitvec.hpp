#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sdpspin {

/// Fixed-length bit vector packed into 64-bit words.
///
/// The length is fixed at construction. The unused tail of the last word is
/// kept zero, so popcounts, equality and hashing can work on whole words.
/// All counting is exact integer arithmetic.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(uint32_t length);

    /// Parse from a string of '0'/'1' characters, index 0 first.
    static BitVec from_string(std::string_view bits);
    static BitVec from_indices(uint32_t length, std::span<const uint32_t> ones);

    uint32_t length() const { return len_; }
    size_t word_count() const { return words_.size(); }
    std::span<const uint64_t> words() const { return words_; }

    bool get(uint32_t i) const;
    void set(uint32_t i, bool value);

    uint64_t count() const;
    BitVec complement() const;

    BitVec& operator^=(const BitVec& o);
    BitVec& operator&=(const BitVec& o);
    friend BitVec operator^(BitVec a, const BitVec& b) {
        a ^= b;
        return a;
    }
    friend BitVec operator&(BitVec a, const BitVec& b) {
        a &= b;
        return a;
    }

    bool operator==(const BitVec&) const = default;

    std::string to_string() const;

private:
    void require_same_length(const BitVec& o) const;
    void mask_tail();

    uint32_t len_ = 0;
    std::vector<uint64_t> words_;
};

struct BitVecHash {
    size_t operator()(const BitVec& v) const;
};

/// Number of set positions.
uint64_t weight(const BitVec& x);

/// Coordinatewise XOR of a nonempty list of equal-length vectors.
BitVec sum_mod2(std::span<const BitVec> xs);

/// Popcount of the coordinatewise AND of a nonempty list.
uint64_t intersection_count(std::span<const BitVec> xs);

/// Rectangular bit matrix; row order is significant.
struct BitMatrix {
    std::vector<BitVec> rows;

    BitMatrix() = default;
    explicit BitMatrix(std::vector<BitVec> r);

    uint32_t row_count() const { return static_cast<uint32_t>(rows.size()); }
    uint32_t col_count() const { return rows.empty() ? 0 : rows[0].length(); }
};

/// Rank over GF(2), by elimination on packed words. The input is not modified.
uint32_t gf2_rank(const BitMatrix& m);

}  // namespace sdpspin

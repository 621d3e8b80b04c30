#include "sdpspin/bitvec.hpp"

#include <bit>
#include <stdexcept>

namespace sdpspin {

namespace {

constexpr size_t words_for(uint32_t len) {
    return (static_cast<size_t>(len) + 63) / 64;
}

}  // namespace

BitVec::BitVec(uint32_t length) : len_(length), words_(words_for(length), 0) {}

BitVec BitVec::from_string(std::string_view bits) {
    BitVec v(static_cast<uint32_t>(bits.size()));
    for (uint32_t i = 0; i < v.len_; ++i) {
        char c = bits[i];
        if (c == '1') {
            v.words_[i >> 6] |= uint64_t{1} << (i & 63);
        } else if (c != '0') {
            throw std::invalid_argument("BitVec::from_string: character is not '0' or '1'");
        }
    }
    return v;
}

BitVec BitVec::from_indices(uint32_t length, std::span<const uint32_t> ones) {
    BitVec v(length);
    for (uint32_t i : ones) v.set(i, true);
    return v;
}

bool BitVec::get(uint32_t i) const {
    if (i >= len_) throw std::out_of_range("BitVec::get: index out of range");
    return (words_[i >> 6] >> (i & 63)) & 1;
}

void BitVec::set(uint32_t i, bool value) {
    if (i >= len_) throw std::out_of_range("BitVec::set: index out of range");
    uint64_t mask = uint64_t{1} << (i & 63);
    if (value) {
        words_[i >> 6] |= mask;
    } else {
        words_[i >> 6] &= ~mask;
    }
}

uint64_t BitVec::count() const {
    uint64_t c = 0;
    for (uint64_t w : words_) c += static_cast<uint64_t>(std::popcount(w));
    return c;
}

BitVec BitVec::complement() const {
    BitVec r(*this);
    for (uint64_t& w : r.words_) w = ~w;
    r.mask_tail();
    return r;
}

BitVec& BitVec::operator^=(const BitVec& o) {
    require_same_length(o);
    for (size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
}

BitVec& BitVec::operator&=(const BitVec& o) {
    require_same_length(o);
    for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
}

std::string BitVec::to_string() const {
    std::string s(len_, '0');
    for (uint32_t i = 0; i < len_; ++i) {
        if ((words_[i >> 6] >> (i & 63)) & 1) s[i] = '1';
    }
    return s;
}

void BitVec::require_same_length(const BitVec& o) const {
    if (len_ != o.len_) throw std::invalid_argument("BitVec: length mismatch");
}

void BitVec::mask_tail() {
    uint32_t rem = len_ & 63;
    if (rem != 0 && !words_.empty()) {
        words_.back() &= (uint64_t{1} << rem) - 1;
    }
}

size_t BitVecHash::operator()(const BitVec& v) const {
    // FNV-1a over the packed words.
    uint64_t h = 14695981039346656037ull;
    for (uint64_t w : v.words()) {
        h ^= w;
        h *= 1099511628211ull;
    }
    h ^= v.length();
    h *= 1099511628211ull;
    return static_cast<size_t>(h);
}

uint64_t weight(const BitVec& x) { return x.count(); }

BitVec sum_mod2(std::span<const BitVec> xs) {
    if (xs.empty()) throw std::invalid_argument("sum_mod2: empty input");
    BitVec acc = xs[0];
    for (size_t i = 1; i < xs.size(); ++i) acc ^= xs[i];
    return acc;
}

uint64_t intersection_count(std::span<const BitVec> xs) {
    if (xs.empty()) throw std::invalid_argument("intersection_count: empty input");
    BitVec acc = xs[0];
    for (size_t i = 1; i < xs.size(); ++i) acc &= xs[i];
    return acc.count();
}

BitMatrix::BitMatrix(std::vector<BitVec> r) : rows(std::move(r)) {
    for (const BitVec& row : rows) {
        if (row.length() != rows[0].length()) {
            throw std::invalid_argument("BitMatrix: rows of unequal length");
        }
    }
}

namespace {

// Position of the highest set bit, or -1 for the zero vector.
int highest_bit(const BitVec& v) {
    std::span<const uint64_t> w = v.words();
    for (size_t wi = w.size(); wi-- > 0;) {
        if (w[wi] != 0) {
            return static_cast<int>(wi * 64 + 63 - std::countl_zero(w[wi]));
        }
    }
    return -1;
}

}  // namespace

uint32_t gf2_rank(const BitMatrix& m) {
    if (m.rows.empty()) throw std::invalid_argument("gf2_rank: empty matrix");

    // Elimination on copies; basis[p] holds the unique row whose highest set
    // bit is p. Each XOR strictly lowers the highest bit, so insertion
    // terminates.
    std::vector<BitVec> basis(m.col_count());
    uint32_t rank = 0;
    for (const BitVec& row0 : m.rows) {
        BitVec row = row0;
        int h;
        while ((h = highest_bit(row)) >= 0) {
            BitVec& slot = basis[static_cast<size_t>(h)];
            if (slot.length() == 0) {
                slot = std::move(row);
                ++rank;
                break;
            }
            row ^= slot;
        }
    }
    return rank;
}

}  // namespace sdpspin

#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "sdpspin/design.hpp"

namespace sdpspin {

/// Finite group given by its multiplication table. Element 0 is the
/// identity. Validated on construction: closure, identity, inverses and
/// associativity.
struct GroupTable {
    uint32_t order = 0;
    std::vector<uint32_t> table;  // row-major, table[i*order + j] = i*j

    static GroupTable from_table(uint32_t order, std::vector<uint32_t> table);

    /// Text format: line 1 is the order, then `order` lines of `order`
    /// space-separated element indices.
    static GroupTable parse(std::istream& in, const std::string& source_name = "<group>");

    uint32_t mul(uint32_t i, uint32_t j) const { return table[i * order + j]; }
    uint32_t inverse(uint32_t i) const { return inv_[i]; }

private:
    std::vector<uint32_t> inv_;
};

/// Square matrix with entries in {+1, -1}.
struct HadamardMatrix {
    uint32_t n = 0;
    std::vector<int8_t> entries;  // row-major

    static HadamardMatrix zeros(uint32_t n) { return {n, std::vector<int8_t>(n * size_t{n}, 1)}; }

    int8_t at(uint32_t i, uint32_t j) const { return entries[static_cast<size_t>(i) * n + j]; }
    int8_t& at(uint32_t i, uint32_t j) { return entries[static_cast<size_t>(i) * n + j]; }
};

enum class SymplecticMethod { kronecker, quadratic_forms };

/// The 4x4 matrix J - 2I and its m-fold Kronecker power.
HadamardMatrix kronecker_power_base4(int m);

/// Builds the symplectic design on 2^(2m) points together with its natural
/// polarity (both constructions give a symmetric incidence matrix, so the
/// polarity is the identity permutation).
///
/// kronecker: H = (J - 2I)^(tensor m), design A = (J - H)/2.
/// quadratic_forms: points are GF(2)^(2m) vectors encoded little-endian;
/// with Q0(x) = sum over i of x(2i-1) * x(2i), the block indexed by a is
/// {x : Q0(x + a) = 1}.
std::pair<Design, Correspondence> symplectic_design(int m, SymplecticMethod method);

/// Pass iff H Ht = nI, all row sums equal one constant 2u, and n = 4u^2.
ConditionReport regular_hadamard_check(const HadamardMatrix& h);

/// A = (J - H)/2 after normalizing the row sum to be positive, giving
/// constant block size 2u^2 - u. Rejects matrices failing the regularity
/// check.
Design hadamard_to_design(const HadamardMatrix& h);

/// J - 2A; inverse of hadamard_to_design on valid inputs.
HadamardMatrix design_to_pm1(const Design& d);

/// Blocks are the left translates g*S. S must be a (v, k, lambda)
/// difference set: every non-identity element has exactly lambda
/// representations s * t^-1 with s, t in S.
Design develop_difference_set(const GroupTable& g, const std::vector<uint32_t>& s);

/// Exhaustive scan of all k-subsets for the difference-set property.
std::vector<std::vector<uint32_t>> find_difference_sets(const GroupTable& g, uint32_t k,
                                                        uint32_t lambda,
                                                        size_t limit = static_cast<size_t>(-1));

}  // namespace sdpspin

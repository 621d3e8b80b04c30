#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sdpspin/bitvec.hpp"

namespace sdpspin {

/// Parameters of the symmetric-difference-property family: v = 2^(2m),
/// k = 2^(2m-1) - 2^(m-1), lambda = 2^(2m-2) - 2^(m-1), with u = 2^(m-1).
struct SdpShape {
    int m = 0;
    uint32_t u = 0;
};

/// Nominal parameters of an incidence structure. k and lambda are the modal
/// block weight and modal point-pair coverage; unanimity is checked by
/// validate_square_2design, so invalid inputs still carry usable parameters
/// and can be run through the condition checkers.
struct DesignParams {
    uint32_t v = 0;
    uint32_t b = 0;
    std::optional<uint32_t> k;
    std::optional<uint32_t> lambda;
    std::optional<SdpShape> sdp_shape;
};

/// Incidence structure: rows = blocks, columns = points. Immutable after
/// construction; the point-column transpose is cached.
class Design {
public:
    static Design from_blocks(uint32_t v, std::vector<BitVec> blocks);

    uint32_t v() const { return v_; }
    uint32_t b() const { return static_cast<uint32_t>(blocks_.size()); }
    const std::vector<BitVec>& blocks() const { return blocks_; }
    const std::vector<BitVec>& columns() const { return columns_; }
    const DesignParams& params() const { return params_; }

    const BitVec& block(uint32_t i) const { return blocks_[i]; }
    const BitVec& column(uint32_t p) const { return columns_[p]; }

private:
    Design() = default;
    uint32_t v_ = 0;
    std::vector<BitVec> blocks_;
    std::vector<BitVec> columns_;
    DesignParams params_;
};

/// One offending tuple of block or point indices, with the observed value.
struct Witness {
    std::string kind;
    std::vector<uint32_t> indices;
    long long value = 0;

    friend bool operator<(const Witness& a, const Witness& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        if (a.indices != b.indices) return a.indices < b.indices;
        return a.value < b.value;
    }
    friend bool operator==(const Witness& a, const Witness& b) {
        return a.kind == b.kind && a.indices == b.indices && a.value == b.value;
    }
};

/// Witness lists are capped; failure_count stays exact.
inline constexpr size_t kWitnessCap = 16;

struct ConditionReport {
    std::string name;
    bool pass = true;
    uint64_t failure_count = 0;
    std::vector<Witness> witnesses;
    std::map<std::string, std::string> details;
};

/// Multiset of t-wise block intersection sizes.
struct SpectrumReport {
    int order = 2;
    bool exhaustive = true;
    std::map<long long, uint64_t> counts;
    std::optional<uint64_t> seed;
    std::optional<uint64_t> trials;
};

/// Exhaustive enumeration or seeded sampling of block/point tuples.
struct EnumMode {
    bool exhaustive = true;
    uint64_t seed = 0;
    uint64_t trials = 0;

    static EnumMode full() { return {}; }
    static EnumMode sampled(uint64_t seed, uint64_t trials) { return {false, seed, trials}; }
};

/// A 1-1 correspondence phi : points -> blocks, as a permutation of 0..v-1.
struct Correspondence {
    std::vector<uint32_t> phi;

    static Correspondence identity(uint32_t v);
    bool is_bijection(uint32_t v) const;
};

/// Pass iff b = v, all block weights equal k, every point pair is covered
/// lambda times, every block pair meets in lambda points, and no block
/// repeats. Details carry (v, k, lambda).
ConditionReport validate_square_2design(const Design& d);

/// Intersection-size counts over all (or sampled) order-tuples of distinct
/// blocks. Deterministic given seed; thread count never changes the result.
SpectrumReport spectrum(const Design& d, int order, const EnumMode& mode, int threads = 1);

/// Pass iff the sum of every three distinct blocks is a block or a block
/// complement.
ConditionReport sdp_check_three_sums(const Design& d, int threads = 1);

/// Pass iff the sum of every four distinct blocks has weight 0, 2u^2 or 4u^2.
/// Requires SDP-shaped parameters.
ConditionReport sdp_check_four_sums(const Design& d, int threads = 1);

/// Quasi-3 for blocks. With SDP-shaped parameters the two admissible triple
/// intersection sizes are x = u^2/2 - u and y = u^2/2 - u/2; otherwise the
/// generic check passes iff at most two sizes occur.
ConditionReport check_condition1(const Design& d, int threads = 1);

enum class Cond2Mode { parity, divisibility };

/// parity: every 4-set of blocks has an even number of 3-subsets with triple
/// intersection size x. divisibility: every quadruple intersection size is
/// divisible by 2^(m-2). The two modes agree on every design.
ConditionReport check_condition2(const Design& d, Cond2Mode mode, int threads = 1);

/// Restriction of all other blocks to the points of the chosen block.
Design derived_design(const Design& d, uint32_t block_index);

/// Pass iff every triple intersection size of the derived design is
/// divisible by 2^(m-2). The input must have the derived-design shape for
/// the given m: 2^(2m-1) - 2^(m-1) points and 2^(2m) - 1 blocks.
ConditionReport mw_criterion(const Design& derived, int m);

/// Transpose (blocks <-> points); square designs only.
Design dual_design(const Design& d);

/// Pass iff reordering blocks by phi yields a symmetric incidence matrix.
ConditionReport check_polarity(const Design& d, const Correspondence& phi);

/// Pass iff for all (or sampled) point triples {a,b,c} the number of blocks
/// containing them equals |phi(a) .. phi(b) .. phi(c)| as a block
/// intersection.
ConditionReport check_condition3(const Design& d, const Correspondence& phi,
                                 const EnumMode& mode, int threads = 1);

}  // namespace sdpspin

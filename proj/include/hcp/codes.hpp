#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "hcp/bitvec.hpp"
#include "hcp/gf.hpp"

namespace hcp {

/// Parameters of a binary (m, K, d) code as seen by the solvers.
struct CodeParams {
    std::size_t block_len = 0;
    /// log2 K; K itself may be astronomically large for concatenated codes.
    double log2_size = 0.0;
    /// K when it fits in 64 bits.
    std::optional<std::uint64_t> size;
    std::size_t design_distance = 0;
    /// Proven lower bound on the actual minimum distance.
    std::size_t min_distance = 0;
    /// Radius up to which decode provably returns the unique nearest codeword.
    std::size_t guaranteed_radius = 0;
    std::optional<std::size_t> covering_radius;
};

/// A binary code with a (possibly partial) decoder.
class BinaryCode {
public:
    virtual ~BinaryCode() = default;

    [[nodiscard]] virtual const CodeParams& params() const noexcept = 0;
    [[nodiscard]] virtual std::string kind() const = 0;

    /// Runs the underlying decoder. On success writes a codeword to `out` and returns true.
    virtual bool decode_into(const BitVector& x, BitVector& out) const = 0;

    [[nodiscard]] std::optional<BitVector> decode(const BitVector& x) const;
};

/**
 * Dec(C, r, x): the decoded codeword if the decoder returns one within
 * distance r of x, otherwise x itself. Construction fails with ConfigError
 * when r exceeds the code's guaranteed radius.
 */
class RadiusDecoder {
public:
    RadiusDecoder(const BinaryCode& code, std::size_t radius);

    void operator()(const BitVector& x, BitVector& out) const;
    [[nodiscard]] BitVector operator()(const BitVector& x) const;

    [[nodiscard]] std::size_t radius() const noexcept { return radius_; }
    [[nodiscard]] const BinaryCode& code() const noexcept { return *code_; }

private:
    const BinaryCode* code_;
    std::size_t radius_;
    mutable BitVector scratch_; // not shared across threads; each worker owns its decoder
};

[[nodiscard]] BitVector dec_with_radius(const BinaryCode& code, std::size_t radius, const BitVector& x);

/// The whole space F_2^m viewed as a code: every word decodes to itself. Used for radius 0.
class IdentityCode final : public BinaryCode {
public:
    explicit IdentityCode(std::size_t m);

    [[nodiscard]] const CodeParams& params() const noexcept override { return params_; }
    [[nodiscard]] std::string kind() const override { return "identity"; }
    bool decode_into(const BitVector& x, BitVector& out) const override;

private:
    CodeParams params_;
};

// ---------------------------------------------------------------------------
// Gilbert greedy code with a full decoding lookup table.

inline constexpr std::size_t kDefaultMaxTableBits = 26;
inline constexpr std::size_t kHardMaxTableBits = 30;

class GilbertCode final : public BinaryCode {
public:
    static constexpr std::uint32_t kNarrowSentinel = 0xFFFF;
    static constexpr std::uint32_t kWideSentinel = 0xFFFFFFFF;

    /**
     * Greedy construction over F_2^m in bit-lexicographic pick order: take
     * the smallest remaining vector, delete the closed ball B(x, d). The
     * resulting codewords are pairwise at distance >= d+1. `radius` is the
     * lookup radius (<= d); the decoding guarantee is min(radius, floor(d/2)).
     */
    static GilbertCode build(std::size_t m, std::size_t d, std::size_t radius,
                             std::size_t max_table_bits = kDefaultMaxTableBits);

    /// Rebuilds a code from serialized parts; validates the table and recomputes the covering radius.
    static GilbertCode from_parts(std::size_t m, std::size_t d, std::size_t radius,
                                  std::vector<std::uint32_t> codeword_values, std::vector<std::uint32_t> entries);

    [[nodiscard]] const CodeParams& params() const noexcept override { return params_; }
    [[nodiscard]] std::string kind() const override { return "gilbert"; }
    bool decode_into(const BitVector& x, BitVector& out) const override;

    [[nodiscard]] std::size_t m() const noexcept { return m_; }
    [[nodiscard]] std::size_t d() const noexcept { return d_; }
    [[nodiscard]] std::size_t radius() const noexcept { return radius_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

    [[nodiscard]] const std::vector<BitVector>& codewords() const noexcept { return codewords_; }
    [[nodiscard]] std::uint32_t codeword_value(std::size_t index) const { return values_.at(index); }

    /// Codeword index stored for point `x` (as an m-bit integer), or nullopt for the sentinel.
    [[nodiscard]] std::optional<std::uint32_t> lookup(std::uint64_t x) const;
    [[nodiscard]] std::optional<std::uint32_t> decode_index(const BitVector& x) const;
    /// Raw table entry, sentinel included.
    [[nodiscard]] std::uint32_t entry(std::uint64_t x) const;
    /// 32-bit entries are used when K > 65534.
    [[nodiscard]] bool wide_entries() const noexcept { return !wide_.empty(); }
    [[nodiscard]] std::uint32_t sentinel() const noexcept { return wide_entries() ? kWideSentinel : kNarrowSentinel; }

    /// Exact covering radius, computed by multi-source BFS over the cube.
    [[nodiscard]] std::size_t covering_radius() const noexcept { return covering_radius_; }

private:
    GilbertCode() = default;
    void finish(const std::vector<std::uint32_t>& owner, const std::vector<std::uint8_t>& dist);

    std::size_t m_ = 0;
    std::size_t d_ = 0;
    std::size_t radius_ = 0;
    std::vector<std::uint32_t> values_;
    std::vector<BitVector> codewords_;
    std::vector<std::uint16_t> narrow_;
    std::vector<std::uint32_t> wide_;
    std::size_t covering_radius_ = 0;
    CodeParams params_;
};

[[nodiscard]] inline std::size_t gilbert_covering_radius(const GilbertCode& code) { return code.covering_radius(); }

// ---------------------------------------------------------------------------
// Reed-Solomon over GF(2^t) with Berlekamp-Welch unique decoding.

class ReedSolomon {
public:
    /// Evaluation points are generator^0 .. generator^(n-1); requires 1 <= k <= n <= q-1.
    ReedSolomon(unsigned field_degree, std::size_t n, std::size_t k);

    [[nodiscard]] const gf::Field& field() const noexcept { return field_; }
    [[nodiscard]] std::size_t length() const noexcept { return n_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return k_; }
    [[nodiscard]] std::size_t min_distance() const noexcept { return n_ - k_ + 1; }
    /// floor((n-k)/2) symbol errors.
    [[nodiscard]] std::size_t radius() const noexcept { return (n_ - k_) / 2; }
    [[nodiscard]] const std::vector<gf::Elem>& points() const noexcept { return alphas_; }

    [[nodiscard]] std::vector<gf::Elem> encode(std::span<const gf::Elem> msg) const;
    /// Message of the codeword within radius() symbols of `received`, or nullopt.
    [[nodiscard]] std::optional<std::vector<gf::Elem>> decode(std::span<const gf::Elem> received) const;

private:
    gf::Field field_;
    std::size_t n_;
    std::size_t k_;
    std::vector<gf::Elem> alphas_;
};

[[nodiscard]] std::size_t symbol_distance(std::span<const gf::Elem> a, std::span<const gf::Elem> b);

// ---------------------------------------------------------------------------
// Concatenation RS ◇ Gilbert.

struct ConcatLimits {
    std::size_t max_inner_bits = 16;
    unsigned max_field_degree = 16;
};

class ConcatCode final : public BinaryCode {
public:
    /**
     * Symbol v of the outer code maps to inner codeword v. The binary block
     * is m1*m2 bits followed by `block_len - m1*m2` zero pad bits.
     * Guaranteed radius: ceil(d1/2)*(rho2+1) - 1, where rho2 is the inner
     * guaranteed radius. Fewer errors than that leave fewer than ceil(d1/2)
     * inner blocks with more than rho2 errors, which the outer decoder fixes.
     */
    ConcatCode(ReedSolomon outer, std::shared_ptr<const GilbertCode> inner, std::size_t block_len);

    /**
     * Grid search over (m2, d2, t, k1) maximizing log2 K = k1*t subject to
     * m1*m2 <= m, K2 >= q > m1, guaranteed radius >= required_radius and
     * d1*(d2+1) >= required_distance (default 2*required_radius+1).
     */
    static ConcatCode build(std::size_t m, std::size_t required_radius,
                            std::optional<std::size_t> required_distance = std::nullopt, ConcatLimits limits = {});

    [[nodiscard]] const CodeParams& params() const noexcept override { return params_; }
    [[nodiscard]] std::string kind() const override { return "concat"; }
    bool decode_into(const BitVector& x, BitVector& out) const override;

    [[nodiscard]] BitVector encode(std::span<const gf::Elem> msg) const;

    [[nodiscard]] const ReedSolomon& outer() const noexcept { return outer_; }
    [[nodiscard]] const GilbertCode& inner() const noexcept { return *inner_; }
    [[nodiscard]] std::size_t coded_bits() const noexcept { return outer_.length() * inner_->m(); }

private:
    ReedSolomon outer_;
    std::shared_ptr<const GilbertCode> inner_;
    CodeParams params_;
};

/// Guaranteed radius of the inner-then-outer decoder.
[[nodiscard]] std::size_t concat_guaranteed_radius(std::size_t outer_distance, std::size_t inner_radius);

// ---------------------------------------------------------------------------

/// Thread-safe memo of built Gilbert codes keyed by (m, d, radius).
class CodeCache {
public:
    std::shared_ptr<const GilbertCode> gilbert(std::size_t m, std::size_t d, std::size_t radius,
                                               std::size_t max_table_bits = kDefaultMaxTableBits);
    static CodeCache& global();

private:
    std::mutex mutex_;
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::shared_ptr<const GilbertCode>> codes_;
};

} // namespace hcp

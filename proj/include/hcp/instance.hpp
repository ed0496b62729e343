#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "hcp/bitvec.hpp"

namespace hcp {

struct PlantedInfo {
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t distance = 0;

    friend bool operator==(const PlantedInfo&, const PlantedInfo&) = default;
};

/// n >= 2 binary vectors of common length m, with optional planted-pair metadata.
class Instance {
public:
    explicit Instance(std::vector<BitVector> vectors, std::optional<PlantedInfo> planted = std::nullopt);

    [[nodiscard]] std::size_t n() const noexcept { return vectors_.size(); }
    [[nodiscard]] std::size_t m() const noexcept { return vectors_.front().size(); }
    [[nodiscard]] const std::vector<BitVector>& vectors() const noexcept { return vectors_; }
    [[nodiscard]] const BitVector& operator[](std::size_t k) const { return vectors_.at(k); }
    [[nodiscard]] const std::optional<PlantedInfo>& planted() const noexcept { return planted_; }

    friend bool operator==(const Instance&, const Instance&) = default;

private:
    std::vector<BitVector> vectors_;
    std::optional<PlantedInfo> planted_;
};

struct PlantedSpec {
    std::size_t n = 2;
    std::size_t m = 8;
    std::size_t dmin = 1;
    /// Every other pairwise distance is at least this; defaults to dmin + 1.
    std::optional<std::size_t> d2;
    std::uint64_t seed = 0;
    /// Rejection-sampling attempts per vector.
    std::size_t max_attempts = 100000;
};

struct GeneratedInstance {
    Instance instance;
    /// Total rejected draws.
    std::uint64_t retries = 0;
};

/**
 * Planted pair at exactly `dmin` at random indices; all remaining vectors are
 * rejection-sampled so that every other pairwise distance is >= d2.
 * Throws DataError when the retry budget is exhausted.
 */
[[nodiscard]] GeneratedInstance generate_planted(const PlantedSpec& spec);

} // namespace hcp

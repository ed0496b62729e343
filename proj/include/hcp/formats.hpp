#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hcp/codes.hpp"
#include "hcp/instance.hpp"
#include "hcp/solver.hpp"

namespace hcp::io {

using Bytes = std::vector<std::uint8_t>;

/// CRC-32 (IEEE, zlib polynomial).
[[nodiscard]] std::uint32_t crc32(std::span<const std::uint8_t> data) noexcept;

/**
 * Binary instance: "CPI1", u64 n, u32 m, u8 flags (bit 0: planted metadata),
 * [u64 i, u64 j, u32 dist], n rows of ceil(m/8) bytes, u32 CRC of everything
 * before it. All integers little-endian.
 */
[[nodiscard]] Bytes encode_instance(const Instance& inst);
/// Accepts the binary format or the text format, detected by the first byte.
[[nodiscard]] Instance decode_instance(std::span<const std::uint8_t> data);

/// One line of '0'/'1' per vector; blank lines and lines starting with '#' are skipped.
[[nodiscard]] Instance parse_text_instance(std::string_view text);
[[nodiscard]] std::string format_text_instance(const Instance& inst);

/**
 * Gilbert code table: "GVT1", u32 m, u32 d, u32 radius, u8 flags (bit 0:
 * 32-bit entries), u64 K, K packed codewords, 2^m entries, u32 CRC.
 */
[[nodiscard]] Bytes encode_code_table(const GilbertCode& code);
[[nodiscard]] GilbertCode decode_code_table(std::span<const std::uint8_t> data);

[[nodiscard]] Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> data);

[[nodiscard]] Instance read_instance(const std::filesystem::path& path);
void write_instance(const std::filesystem::path& path, const Instance& inst);

/// SHA-256 of the binary encoding without its metadata, as hex.
[[nodiscard]] std::string instance_digest(const Instance& inst);

struct RunReport {
    std::string algorithm;
    std::string instance_digest;
    std::size_t n = 0;
    std::size_t m = 0;
    std::optional<std::size_t> radius;
    std::string code_kind;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trial_budget;
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t dist = 0;
    std::uint64_t trials_used = 0;
    std::uint64_t trials_planned = 0;
    double wall_ms = 0.0;
    std::optional<CodeStats> code;
    /// Solver-specific fields appended in order.
    std::vector<std::pair<std::string, std::string>> extra;
};

/**
 * Builds a report after recomputing the distance of (i, j) on the instance.
 * A mismatch throws InvariantError, so no report can carry an inconsistent triple.
 */
[[nodiscard]] RunReport make_report(const Instance& inst, const PairResult& result, const SolveConfig& cfg,
                                    double wall_ms);

/// Flat "key = value" lines.
[[nodiscard]] std::string format_report(const RunReport& report);
[[nodiscard]] std::vector<std::pair<std::string, std::string>> parse_report(std::string_view text);

} // namespace hcp::io

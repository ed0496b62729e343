#include "hcp/formats.hpp"

#include <openssl/evp.h>
#include <zlib.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <limits>
#include <sstream>

#include "hcp/error.hpp"

namespace hcp::io {

namespace {

constexpr std::array<std::uint8_t, 4> kInstanceMagic{'C', 'P', 'I', '1'};
constexpr std::array<std::uint8_t, 4> kCodeMagic{'G', 'V', 'T', '1'};
constexpr std::uint8_t kFlagPlanted = 0x01;
constexpr std::uint8_t kFlagWide = 0x01;

template <class T>
void put(Bytes& out, T value) {
    for (std::size_t k = 0; k < sizeof(T); ++k) {
        out.push_back(static_cast<std::uint8_t>((static_cast<std::uint64_t>(value) >> (8 * k)) & 0xFF));
    }
}

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}

    template <class T>
    T get(const char* what) {
        need(sizeof(T), what);
        std::uint64_t v = 0;
        for (std::size_t k = 0; k < sizeof(T); ++k) {
            v |= static_cast<std::uint64_t>(data_[pos_ + k]) << (8 * k);
        }
        pos_ += sizeof(T);
        return static_cast<T>(v);
    }

    std::span<const std::uint8_t> take(std::size_t count, const char* what) {
        need(count, what);
        auto s = data_.subspan(pos_, count);
        pos_ += count;
        return s;
    }

    [[nodiscard]] std::size_t remaining() const noexcept { return data_.size() - pos_; }

private:
    void need(std::size_t count, const char* what) const {
        if (count > data_.size() - pos_) {
            throw ParseError(std::string("truncated file while reading ") + what);
        }
    }

    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
};

/// Splits off and verifies the CRC trailer, returning the covered payload.
std::span<const std::uint8_t> checked_payload(std::span<const std::uint8_t> data, const char* what) {
    if (data.size() < 8) {
        throw ParseError(std::string(what) + " file is too short");
    }
    const auto payload = data.first(data.size() - 4);
    Reader tail(data.last(4));
    const auto stored = tail.get<std::uint32_t>("checksum");
    if (stored != crc32(payload)) {
        throw ParseError(std::string(what) + " checksum mismatch");
    }
    return payload;
}

void seal(Bytes& out) {
    const std::uint32_t c = crc32(out);
    put<std::uint32_t>(out, c);
}

Bytes encode_rows(const Instance& inst, bool with_meta) {
    Bytes out(kInstanceMagic.begin(), kInstanceMagic.end());
    put<std::uint64_t>(out, inst.n());
    put<std::uint32_t>(out, static_cast<std::uint32_t>(inst.m()));
    const bool meta = with_meta && inst.planted().has_value();
    put<std::uint8_t>(out, meta ? kFlagPlanted : 0);
    if (meta) {
        put<std::uint64_t>(out, inst.planted()->i);
        put<std::uint64_t>(out, inst.planted()->j);
        put<std::uint32_t>(out, static_cast<std::uint32_t>(inst.planted()->distance));
    }
    for (const auto& v : inst.vectors()) {
        v.append_bytes(out);
    }
    return out;
}

Instance decode_binary_instance(std::span<const std::uint8_t> data) {
    Reader r(checked_payload(data, "instance"));
    const auto magic = r.take(4, "magic");
    if (!std::equal(magic.begin(), magic.end(), kInstanceMagic.begin())) {
        throw ParseError("not an instance file (bad magic)");
    }
    const auto n = r.get<std::uint64_t>("n");
    const auto m = r.get<std::uint32_t>("m");
    const auto flags = r.get<std::uint8_t>("flags");
    if (n < 2) {
        throw ParseError("instance declares n < 2");
    }
    if (m == 0 || m > BitVector::kMaxBits) {
        throw ParseError("instance declares m outside [1, 2^20]");
    }
    if ((flags & ~kFlagPlanted) != 0) {
        throw ParseError("unknown instance flags");
    }
    std::optional<PlantedInfo> planted;
    if (flags & kFlagPlanted) {
        PlantedInfo p;
        p.i = static_cast<std::size_t>(r.get<std::uint64_t>("planted i"));
        p.j = static_cast<std::size_t>(r.get<std::uint64_t>("planted j"));
        p.distance = r.get<std::uint32_t>("planted distance");
        planted = p;
    }
    const std::size_t row = (m + 7) / 8;
    if (n > r.remaining() / row || n * row != r.remaining()) {
        throw ParseError("instance body size does not match n and m");
    }
    std::vector<BitVector> vectors;
    vectors.reserve(n);
    for (std::uint64_t k = 0; k < n; ++k) {
        try {
            vectors.push_back(BitVector::from_bytes(m, r.take(row, "row")));
        } catch (const Error& e) {
            throw ParseError("row " + std::to_string(k) + ": " + e.what());
        }
    }
    try {
        return Instance(std::move(vectors), planted);
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

} // namespace

std::uint32_t crc32(std::span<const std::uint8_t> data) noexcept {
    uLong c = ::crc32(0L, Z_NULL, 0);
    std::size_t pos = 0;
    while (pos < data.size()) {
        const auto chunk = static_cast<uInt>(std::min<std::size_t>(data.size() - pos, std::numeric_limits<uInt>::max()));
        c = ::crc32(c, data.data() + pos, chunk);
        pos += chunk;
    }
    return static_cast<std::uint32_t>(c);
}

Bytes encode_instance(const Instance& inst) {
    Bytes out = encode_rows(inst, true);
    seal(out);
    return out;
}

Instance decode_instance(std::span<const std::uint8_t> data) {
    if (data.empty()) {
        throw ParseError("empty instance file");
    }
    if (data[0] == kInstanceMagic[0]) {
        return decode_binary_instance(data);
    }
    if (data[0] == '0' || data[0] == '1' || data[0] == '#' || data[0] == '\n' || data[0] == '\r') {
        return parse_text_instance(std::string_view(reinterpret_cast<const char*>(data.data()), data.size()));
    }
    throw ParseError("unrecognized instance format");
}

Instance parse_text_instance(std::string_view text) {
    std::vector<BitVector> vectors;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        try {
            vectors.push_back(BitVector::from_string(line));
        } catch (const Error& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    try {
        return Instance(std::move(vectors));
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

std::string format_text_instance(const Instance& inst) {
    std::string out;
    out.reserve(inst.n() * (inst.m() + 1));
    for (const auto& v : inst.vectors()) {
        out += v.to_string();
        out += '\n';
    }
    return out;
}

Bytes encode_code_table(const GilbertCode& code) {
    Bytes out(kCodeMagic.begin(), kCodeMagic.end());
    put<std::uint32_t>(out, static_cast<std::uint32_t>(code.m()));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(code.d()));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(code.radius()));
    put<std::uint8_t>(out, code.wide_entries() ? kFlagWide : 0);
    put<std::uint64_t>(out, code.size());
    for (const auto& c : code.codewords()) {
        c.append_bytes(out);
    }
    const std::uint64_t points = std::uint64_t{1} << code.m();
    out.reserve(out.size() + points * (code.wide_entries() ? 4 : 2) + 4);
    for (std::uint64_t x = 0; x < points; ++x) {
        if (code.wide_entries()) {
            put<std::uint32_t>(out, code.entry(x));
        } else {
            put<std::uint16_t>(out, static_cast<std::uint16_t>(code.entry(x)));
        }
    }
    seal(out);
    return out;
}

GilbertCode decode_code_table(std::span<const std::uint8_t> data) {
    Reader r(checked_payload(data, "code table"));
    const auto magic = r.take(4, "magic");
    if (!std::equal(magic.begin(), magic.end(), kCodeMagic.begin())) {
        throw ParseError("not a code table file (bad magic)");
    }
    const auto m = r.get<std::uint32_t>("m");
    const auto d = r.get<std::uint32_t>("d");
    const auto radius = r.get<std::uint32_t>("radius");
    const auto flags = r.get<std::uint8_t>("flags");
    const auto k = r.get<std::uint64_t>("K");
    if (m == 0 || m > kHardMaxTableBits) {
        throw ParseError("code table declares m outside [1, " + std::to_string(kHardMaxTableBits) + "]");
    }
    if ((flags & ~kFlagWide) != 0) {
        throw ParseError("unknown code table flags");
    }
    const bool wide = (flags & kFlagWide) != 0;
    if (wide != (k > 0xFFFE)) {
        throw ParseError("entry width flag disagrees with K");
    }
    const std::size_t row = (m + 7) / 8;
    const std::uint64_t points = std::uint64_t{1} << m;
    if (k == 0 || k > points || r.remaining() != k * row + points * (wide ? 4 : 2)) {
        throw ParseError("code table body size does not match its header");
    }
    std::vector<std::uint32_t> values;
    values.reserve(k);
    for (std::uint64_t c = 0; c < k; ++c) {
        try {
            values.push_back(static_cast<std::uint32_t>(BitVector::from_bytes(m, r.take(row, "codeword")).low_word()));
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(std::string("codeword: ") + e.what());
        }
    }
    std::vector<std::uint32_t> entries(points);
    for (auto& e : entries) {
        e = wide ? r.get<std::uint32_t>("entry") : r.get<std::uint16_t>("entry");
    }
    return GilbertCode::from_parts(m, d, radius, std::move(values), std::move(entries));
}

Bytes read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ResourceError("cannot write " + path.string());
    }
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) {
        throw ResourceError("short write to " + path.string());
    }
}

Instance read_instance(const std::filesystem::path& path) { return decode_instance(read_file(path)); }

void write_instance(const std::filesystem::path& path, const Instance& inst) {
    write_file(path, encode_instance(inst));
}

std::string instance_digest(const Instance& inst) {
    const Bytes body = encode_rows(inst, false);
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(body.data(), body.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
        throw InvariantError("SHA-256 digest failed");
    }
    std::ostringstream hex;
    hex << std::hex << std::setfill('0');
    for (unsigned int k = 0; k < len; ++k) {
        hex << std::setw(2) << static_cast<int>(md[k]);
    }
    return hex.str();
}

RunReport make_report(const Instance& inst, const PairResult& result, const SolveConfig& cfg, double wall_ms) {
    if (result.i >= inst.n() || result.j >= inst.n() || result.i >= result.j) {
        throw InvariantError("result indices (" + std::to_string(result.i) + ", " + std::to_string(result.j) +
                             ") are not a valid pair");
    }
    const std::size_t measured = hamming(inst[result.i], inst[result.j]);
    if (measured != result.dist) {
        throw InvariantError("reported distance " + std::to_string(result.dist) + " but the pair is at " +
                             std::to_string(measured));
    }
    RunReport rep;
    rep.algorithm = std::string(algorithm_name(result.algorithm));
    rep.instance_digest = instance_digest(inst);
    rep.n = inst.n();
    rep.m = inst.m();
    rep.radius = result.radius;
    rep.code_kind = result.code ? result.code->kind : std::string("none");
    rep.seed = result.seed;
    rep.trial_budget = cfg.trial_budget;
    rep.i = result.i;
    rep.j = result.j;
    rep.dist = measured;
    rep.trials_used = result.trials_used;
    rep.trials_planned = result.trials_planned;
    rep.wall_ms = wall_ms;
    rep.code = result.code;
    return rep;
}

std::string format_report(const RunReport& r) {
    std::ostringstream out;
    auto line = [&](std::string_view key, const auto& value) { out << key << " = " << value << '\n'; };
    auto opt = [&](std::string_view key, const auto& value) {
        if (value) {
            line(key, *value);
        } else {
            line(key, "none");
        }
    };
    line("algorithm", r.algorithm);
    line("instance_digest", r.instance_digest);
    line("n", r.n);
    line("m", r.m);
    opt("radius", r.radius);
    line("code_kind", r.code_kind);
    opt("seed", r.seed);
    opt("trial_budget", r.trial_budget);
    line("i", r.i);
    line("j", r.j);
    line("dist", r.dist);
    line("trials_used", r.trials_used);
    line("trials_planned", r.trials_planned);
    if (r.code) {
        char log2k[64];
        std::snprintf(log2k, sizeof log2k, "%.6f", r.code->log2_size);
        line("code_m", r.code->block_len);
        line("code_log2K", log2k);
        line("code_design_distance", r.code->design_distance);
        line("code_min_distance", r.code->min_distance);
        line("code_guaranteed_radius", r.code->guaranteed_radius);
        opt("code_covering_radius", r.code->covering_radius);
    }
    for (const auto& [k, v] : r.extra) {
        line(k, v);
    }
    char ms[64];
    std::snprintf(ms, sizeof ms, "%.3f", r.wall_ms);
    line("wall_ms", ms);
    return out.str();
}

std::vector<std::pair<std::string, std::string>> parse_report(std::string_view text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find(" = ");
        if (eq == std::string_view::npos) {
            throw ParseError("report line " + std::to_string(line_no) + " has no ' = ' separator");
        }
        out.emplace_back(std::string(line.substr(0, eq)), std::string(line.substr(eq + 3)));
    }
    return out;
}

} // namespace hcp::io

#include "hartree/field_io.hpp"

#include <zlib.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

namespace hartree {

namespace {

namespace fs = std::filesystem;

static_assert(sizeof(double) == 8);

void to_little_endian(std::vector<unsigned char>& bytes) {
    if constexpr (std::endian::native == std::endian::big) {
        for (std::size_t i = 0; i + 8 <= bytes.size(); i += 8) std::reverse(bytes.begin() + i, bytes.begin() + i + 8);
    }
}

template <class T>
void write_impl(const fs::path& header, const Field<T>& field, const char* kind) {
    const auto& grid = field.grid();
    std::vector<unsigned char> bytes(field.size() * sizeof(T));
    std::memcpy(bytes.data(), field.values().data(), bytes.size());
    to_little_endian(bytes);

    fs::path payload = header;
    payload += ".bin";
    {
        std::ofstream out(payload, std::ios::binary | std::ios::trunc);
        if (!out) throw FormatError("cannot open " + payload.string() + " for writing");
        out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw FormatError("failed writing " + payload.string());
    }

    nlohmann::ordered_json doc;
    doc["format"] = kFieldFormat;
    doc["version"] = 1;
    doc["dim"] = grid.dim();
    doc["n"] = grid.n();
    doc["half_width"] = grid.half_width();
    doc["kind"] = kind;
    doc["layout"] = "row-major";
    doc["encoding"] = "little-endian 64-bit float";
    doc["payload"] = payload.filename().string();
    doc["payload_bytes"] = bytes.size();
    doc["checksum"] = payload_checksum(bytes.data(), bytes.size());
    std::ofstream out(header, std::ios::trunc);
    if (!out) throw FormatError("cannot open " + header.string() + " for writing");
    out << doc.dump(2) << '\n';
}

}  // namespace

std::string payload_checksum(const void* data, std::size_t bytes) {
    uLong crc = crc32(0L, Z_NULL, 0);
    const auto* p = static_cast<const Bytef*>(data);
    while (bytes > 0) {
        const auto chunk = static_cast<uInt>(std::min<std::size_t>(bytes, 1u << 30));
        crc = crc32(crc, p, chunk);
        p += chunk;
        bytes -= chunk;
    }
    char buf[16];
    std::snprintf(buf, sizeof buf, "%08lx", static_cast<unsigned long>(crc));
    return std::string("crc32:") + buf;
}

void write_field(const fs::path& header, const RealField& field) { write_impl(header, field, "real"); }
void write_field(const fs::path& header, const ComplexField& field) { write_impl(header, field, "complex"); }

AnyField read_field(const fs::path& header) {
    const auto doc = read_json(header);
    try {
        if (doc.at("format").get<std::string>() != kFieldFormat) throw FormatError("not a field header: " + header.string());
        if (doc.at("layout").get<std::string>() != "row-major" ||
            doc.at("encoding").get<std::string>() != "little-endian 64-bit float") {
            throw FormatError("unsupported layout or encoding in " + header.string());
        }
        const auto kind = doc.at("kind").get<std::string>();
        if (kind != "real" && kind != "complex") throw FormatError("unknown field kind '" + kind + "'");
        SpectralGrid grid = build_grid(doc.at("dim").get<int>(), doc.at("n").get<int>(),
                                       doc.at("half_width").get<double>());
        const std::size_t per = kind == "real" ? 1 : 2;
        const std::size_t expected = grid.size() * per * 8;
        if (doc.at("payload_bytes").get<std::size_t>() != expected) {
            throw FormatError("payload_bytes does not match the grid in " + header.string());
        }

        const fs::path payload = header.parent_path() / doc.at("payload").get<std::string>();
        std::ifstream in(payload, std::ios::binary);
        if (!in) throw FormatError("cannot open payload " + payload.string());
        std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        if (bytes.size() != expected) {
            throw FormatError("payload " + payload.string() + " has " + std::to_string(bytes.size()) +
                              " bytes, expected " + std::to_string(expected));
        }
        if (payload_checksum(bytes.data(), bytes.size()) != doc.at("checksum").get<std::string>()) {
            throw FormatError("checksum mismatch for " + payload.string());
        }
        to_little_endian(bytes);
        if (per == 1) {
            std::vector<double> values(grid.size());
            std::memcpy(values.data(), bytes.data(), bytes.size());
            return RealField(grid, std::move(values));
        }
        std::vector<Complex> values(grid.size());
        std::memcpy(values.data(), bytes.data(), bytes.size());
        return ComplexField(grid, std::move(values));
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("malformed field header " + header.string() + ": " + e.what());
    }
}

ComplexField read_complex_field(const fs::path& header) {
    auto any = read_field(header);
    if (auto* r = std::get_if<RealField>(&any)) return to_complex(*r);
    return std::get<ComplexField>(std::move(any));
}

RealField read_real_field(const fs::path& header) {
    auto any = read_field(header);
    if (auto* r = std::get_if<RealField>(&any)) return std::move(*r);
    throw FormatError(header.string() + " holds a complex field, a real one is required");
}

void write_json(const fs::path& path, const nlohmann::ordered_json& doc) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw FormatError("cannot open " + path.string() + " for writing");
    out << doc.dump(2) << '\n';
}

nlohmann::ordered_json read_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path.string());
    try {
        return nlohmann::ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("malformed JSON in " + path.string() + ": " + e.what());
    }
}

}  // namespace hartree

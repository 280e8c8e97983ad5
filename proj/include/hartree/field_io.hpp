#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include "json.hpp"

#include "hartree/grid.hpp"

namespace hartree {

// On-disk field: a JSON header next to a raw payload.
//
//   header  {"format": "hartree-field", "version": 1, "dim", "n", "half_width",
//            "kind": "real" | "complex", "layout": "row-major",
//            "encoding": "little-endian 64-bit float",
//            "payload": <file name relative to the header>,
//            "payload_bytes", "checksum": "crc32:xxxxxxxx"}
//   payload n^dim samples (complex interleaved re, im), 8 bytes each.

inline constexpr const char* kFieldFormat = "hartree-field";

void write_field(const std::filesystem::path& header, const RealField& field);
void write_field(const std::filesystem::path& header, const ComplexField& field);

using AnyField = std::variant<RealField, ComplexField>;

/// Reads and verifies a field (length and checksum). Throws FormatError.
AnyField read_field(const std::filesystem::path& header);
/// Real fields are promoted.
ComplexField read_complex_field(const std::filesystem::path& header);
/// Throws FormatError for complex payloads.
RealField read_real_field(const std::filesystem::path& header);

/// CRC-32 of a byte buffer, formatted "crc32:xxxxxxxx".
std::string payload_checksum(const void* data, std::size_t bytes);

/// Writes `doc` as indented JSON with a trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& doc);
nlohmann::ordered_json read_json(const std::filesystem::path& path);

}  // namespace hartree

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "coldamp/params.hpp"

namespace coldamp {

/// Contents of a parameter file: the instrument plus the analysis frequency.
struct Config {
    InstrumentParams params;
    double omega = 0.0;  // rad/s

    bool operator==(const Config&) const = default;
};

/// Parses the sectioned key = value format:
///
///   # comment
///   [mechanics]
///   M = 0.27 kg
///
/// Every value carries exactly one unit token. Throws ConfigError with the key
/// and line number on unknown or duplicate keys, malformed numbers, wrong units,
/// missing keys and out-of-range values.
Config parse_config(std::string_view text);

Config load_config(const std::filesystem::path& path);

/// Canonical text: capacitances instead of impedance magnitudes, rad/s throughout,
/// shortest round-trip number formatting. parse_config(dump_config(c)) == c.
std::string dump_config(const Config& c);

/// FNV-1a 64 of the canonical text.
std::uint64_t config_digest(const Config& c);
std::string config_digest_hex(const Config& c);

} // namespace coldamp

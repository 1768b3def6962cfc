#include "coldamp/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <regex>
#include <sstream>
#include <vector>

#include "coldamp/error.hpp"

namespace coldamp {

namespace {

enum class Bound { positive, non_negative };

struct KeySpec {
    std::string_view section;
    std::string_view key;
    std::vector<std::string_view> units;
    Bound bound;
    bool required;
};

// Z_f/C_f and Z_t/C_t are alternatives; exactly one of each pair must be present.
const std::vector<KeySpec>& key_specs() {
    static const std::vector<KeySpec> specs{
        {"mechanics", "M", {"kg"}, Bound::positive, true},
        {"mechanics", "K", {"N/m"}, Bound::non_negative, true},
        {"mechanics", "H_m", {"kg/s"}, Bound::positive, true},
        {"electronics", "kappa_t", {"C/m"}, Bound::non_negative, true},
        {"electronics", "omega_t", {"rad/s", "Hz"}, Bound::positive, true},
        {"electronics", "R_l", {"ohm"}, Bound::positive, true},
        {"electronics", "R_r", {"ohm"}, Bound::positive, true},
        {"electronics", "R_a", {"ohm"}, Bound::positive, true},
        {"electronics", "Z_f", {"ohm"}, Bound::positive, false},
        {"electronics", "C_f", {"F"}, Bound::positive, false},
        {"electronics", "Z_t", {"ohm"}, Bound::positive, false},
        {"electronics", "C_t", {"F"}, Bound::positive, false},
        {"noise", "Theta_m", {"K"}, Bound::non_negative, true},
        {"noise", "Theta_a", {"K"}, Bound::non_negative, true},
        {"noise", "Theta_l", {"K"}, Bound::non_negative, true},
        {"noise", "Theta_r", {"K"}, Bound::non_negative, true},
        {"analysis", "Omega", {"rad/s", "Hz"}, Bound::positive, true},
    };
    return specs;
}

struct Entry {
    double value;
    std::string unit;
    int line;
};

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string at_line(int line) { return " (line " + std::to_string(line) + ")"; }

double parse_number(std::string_view token, const std::string& key, int line) {
    static const std::regex decimal(R"([+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)");
    if (!std::regex_match(token.begin(), token.end(), decimal))
        throw ConfigError("value of " + key + " is not a decimal number: '" + std::string(token) + "'" +
                              at_line(line),
                          key, line);
    const char* first = token.data();
    if (*first == '+') ++first;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(first, token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(v))
        throw ConfigError("value of " + key + " is out of range" + at_line(line), key, line);
    return v;
}

double to_rad_s(const Entry& e) {
    return e.unit == "Hz" ? 2.0 * std::numbers::pi * e.value : e.value;
}

} // namespace

Config parse_config(std::string_view text) {
    std::map<std::string, Entry, std::less<>> entries;
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("malformed section header" + at_line(line_no), "", line_no);
            section = std::string(trim(line.substr(1, line.size() - 2)));
            const auto& specs = key_specs();
            const bool known = std::any_of(specs.begin(), specs.end(),
                                           [&](const KeySpec& k) { return k.section == section; });
            if (!known) throw ConfigError("unknown section [" + section + "]" + at_line(line_no), "", line_no);
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("expected 'key = value unit'" + at_line(line_no), "", line_no);
        const std::string key(trim(line.substr(0, eq)));
        if (section.empty())
            throw ConfigError("key " + key + " appears before any section" + at_line(line_no), key, line_no);

        const auto& specs = key_specs();
        const auto spec = std::find_if(specs.begin(), specs.end(), [&](const KeySpec& k) { return k.key == key; });
        if (spec == specs.end())
            throw ConfigError("unknown key " + key + at_line(line_no), key, line_no);
        if (spec->section != section)
            throw ConfigError("key " + key + " belongs in [" + std::string(spec->section) + "]" + at_line(line_no),
                              key, line_no);
        if (entries.contains(key))
            throw ConfigError("duplicate key " + key + at_line(line_no), key, line_no);

        std::istringstream rhs{std::string(trim(line.substr(eq + 1)))};
        std::string number, unit, extra;
        rhs >> number >> unit;
        if (number.empty())
            throw ConfigError("missing value for " + key + at_line(line_no), key, line_no);
        if (unit.empty())
            throw ConfigError("missing unit for " + key + at_line(line_no), key, line_no);
        if (rhs >> extra)
            throw ConfigError("unexpected text after the unit of " + key + at_line(line_no), key, line_no);

        const double value = parse_number(number, key, line_no);
        if (std::find(spec->units.begin(), spec->units.end(), unit) == spec->units.end()) {
            std::string expected;
            for (auto u : spec->units) expected += (expected.empty() ? "" : " or ") + std::string(u);
            throw ConfigError("unit of " + key + " must be " + expected + ", got '" + unit + "'" + at_line(line_no),
                              key, line_no);
        }
        if (spec->bound == Bound::positive ? !(value > 0.0) : !(value >= 0.0))
            throw ConfigError(key + (spec->bound == Bound::positive ? " must be positive" : " must be non-negative") +
                                  at_line(line_no),
                              key, line_no);
        entries.emplace(key, Entry{value, unit, line_no});
    }

    for (const auto& spec : key_specs())
        if (spec.required && !entries.contains(spec.key))
            throw ConfigError("missing key " + std::string(spec.key) + " in [" + std::string(spec.section) + "]",
                              std::string(spec.key), 0);
    auto one_of = [&](const char* a, const char* b) {
        const bool has_a = entries.contains(a), has_b = entries.contains(b);
        if (has_a == has_b) {
            const int line = has_a ? entries.at(b).line : 0;
            throw ConfigError(std::string("exactly one of ") + a + " and " + b + " is required" +
                                  (line ? at_line(line) : ""),
                              b, line);
        }
    };
    one_of("Z_f", "C_f");
    one_of("Z_t", "C_t");

    auto v = [&](const char* k) { return entries.at(k).value; };
    Config c;
    auto& p = c.params;
    p.mass = v("M");
    p.stiffness = v("K");
    p.damping = v("H_m");
    p.coupling = v("kappa_t");
    p.carrier_omega = to_rad_s(entries.at("omega_t"));
    p.r_loss = v("R_l");
    p.r_detect = v("R_r");
    p.r_amp = v("R_a");
    p.theta_m = v("Theta_m");
    p.theta_a = v("Theta_a");
    p.theta_l = v("Theta_l");
    p.theta_r = v("Theta_r");
    c.omega = to_rad_s(entries.at("Omega"));
    p.c_feedback = entries.contains("C_f") ? v("C_f") : 1.0 / (p.carrier_omega * v("Z_f"));
    p.c_transducer = entries.contains("C_t") ? v("C_t") : 1.0 / (2.0 * c.omega * v("Z_t"));
    return c;
}

Config load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open parameter file " + path.string(), "", 0);
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config(os.str());
}

namespace {

std::string shortest(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

} // namespace

std::string dump_config(const Config& c) {
    const auto& p = c.params;
    std::ostringstream os;
    auto put = [&](const char* key, double value, const char* unit) {
        os << key << " = " << shortest(value) << ' ' << unit << '\n';
    };
    os << "[mechanics]\n";
    put("M", p.mass, "kg");
    put("K", p.stiffness, "N/m");
    put("H_m", p.damping, "kg/s");
    os << "\n[electronics]\n";
    put("kappa_t", p.coupling, "C/m");
    put("omega_t", p.carrier_omega, "rad/s");
    put("R_l", p.r_loss, "ohm");
    put("R_r", p.r_detect, "ohm");
    put("R_a", p.r_amp, "ohm");
    put("C_f", p.c_feedback, "F");
    put("C_t", p.c_transducer, "F");
    os << "\n[noise]\n";
    put("Theta_m", p.theta_m, "K");
    put("Theta_a", p.theta_a, "K");
    put("Theta_l", p.theta_l, "K");
    put("Theta_r", p.theta_r, "K");
    os << "\n[analysis]\n";
    put("Omega", c.omega, "rad/s");
    return os.str();
}

std::uint64_t config_digest(const Config& c) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : dump_config(c)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string config_digest_hex(const Config& c) {
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << config_digest(c);
    return os.str();
}

} // namespace coldamp

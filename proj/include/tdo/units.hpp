#pragma once

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>

#include "tdo/errors.hpp"

namespace tdo {

/// Parse a number with an optional SI suffix: "95n" -> 95e-9, "5.8p" -> 5.8e-12,
/// "141.8M" -> 1.418e8. Plain and exponent forms pass through unchanged.
/// Case matters only where SI does (m = milli, M = mega).
inline double parse_si(const std::string& text) {
    if (text.empty())
        throw ValidationError("empty numeric value");
    const char* begin = text.c_str();
    char* end = nullptr;
    const double base = std::strtod(begin, &end);
    if (end == begin)
        throw ValidationError("not a number: '" + text + "'");
    std::string suffix(end);
    while (!suffix.empty() && std::isspace(static_cast<unsigned char>(suffix.back())))
        suffix.pop_back();
    while (!suffix.empty() && std::isspace(static_cast<unsigned char>(suffix.front())))
        suffix.erase(suffix.begin());
    if (suffix.empty())
        return base;
    if (suffix.size() != 1)
        throw ValidationError("unrecognized unit suffix '" + suffix + "' in '" + text + "'");
    switch (suffix[0]) {
        case 'f': return base * 1e-15;
        case 'p': return base * 1e-12;
        case 'n': return base * 1e-9;
        case 'u': return base * 1e-6;
        case 'm': return base * 1e-3;
        case 'k': return base * 1e3;
        case 'K': return base * 1e3;
        case 'M': return base * 1e6;
        case 'G': return base * 1e9;
        case 'T': return base * 1e12;
        default:
            throw ValidationError("unrecognized unit suffix '" + suffix + "' in '" + text + "'");
    }
}

/// dB helpers used across the DSP layer.
inline double db_from_power_ratio(double ratio) { return 10.0 * std::log10(ratio); }
inline double db_from_voltage_ratio(double ratio) { return 20.0 * std::log10(ratio); }
inline double power_ratio_from_db(double db) { return std::pow(10.0, db / 10.0); }
inline double voltage_ratio_from_db(double db) { return std::pow(10.0, db / 20.0); }

} // namespace tdo

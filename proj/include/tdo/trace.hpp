#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tdo/errors.hpp"

namespace tdo {

/// Uniformly sampled real-valued voltage time series.
struct Trace {
    std::vector<double> samples;
    double sample_rate = 0.0; ///< S/s
    std::string unit = "V";
    double t0 = 0.0; ///< s

    double duration() const {
        return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
    }

    void validate() const {
        if (!(sample_rate > 0))
            throw ValidationError("trace: sample_rate must be positive");
        if (samples.size() < 2)
            throw ValidationError("trace: need at least 2 samples");
        for (double s : samples)
            if (!std::isfinite(s))
                throw ValidationError("trace: non-finite sample");
    }
};

// ---------------------------------------------------------------------------
// CSV trace format: metadata header lines, then one voltage per line.
//
//   # sample_rate_hz=2e+09
//   # unit=V
//   # t0_s=0
//   0.0012
//   ...
// ---------------------------------------------------------------------------

inline void write_trace_csv(const std::string& path, const Trace& trace) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open for writing: " + path);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", trace.sample_rate);
    out << "# sample_rate_hz=" << buf << "\n";
    out << "# unit=" << trace.unit << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", trace.t0);
    out << "# t0_s=" << buf << "\n";
    for (double s : trace.samples) {
        std::snprintf(buf, sizeof(buf), "%.17g", s);
        out << buf << "\n";
    }
    if (!out)
        throw IoError("write failed: " + path);
}

inline Trace read_trace_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open: " + path);
    Trace trace;
    trace.sample_rate = 0.0;
    std::string line;
    std::size_t lineno = 0;
    bool saw_rate = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                continue; // free-form comment
            std::string key = line.substr(1, eq - 1);
            std::string val = line.substr(eq + 1);
            // trim
            while (!key.empty() && key.front() == ' ') key.erase(key.begin());
            while (!key.empty() && key.back() == ' ') key.pop_back();
            if (key == "sample_rate_hz") {
                trace.sample_rate = std::strtod(val.c_str(), nullptr);
                saw_rate = true;
            } else if (key == "unit") {
                trace.unit = val;
            } else if (key == "t0_s") {
                trace.t0 = std::strtod(val.c_str(), nullptr);
            }
            continue;
        }
        char* end = nullptr;
        const double v = std::strtod(line.c_str(), &end);
        if (end == line.c_str()) {
            std::ostringstream os;
            os << path << ": line " << lineno << ": not a number: '" << line << "'";
            throw IoError(os.str());
        }
        trace.samples.push_back(v);
    }
    if (!saw_rate)
        throw IoError(path + ": missing '# sample_rate_hz=' header");
    trace.validate();
    return trace;
}

// ---------------------------------------------------------------------------
// Packed binary trace: 64-byte JSON preamble (space padded), then raw
// little-endian float64 samples. Keys: sr (sample rate), t0, u (unit).
// ---------------------------------------------------------------------------

inline constexpr std::size_t kBinaryPreambleSize = 64;

inline void write_trace_bin(const std::string& path, const Trace& trace) {
    static_assert(std::endian::native == std::endian::little,
                  "binary trace writer assumes a little-endian host");
    nlohmann::json header;
    header["sr"] = trace.sample_rate;
    header["t0"] = trace.t0;
    header["u"] = trace.unit;
    std::string preamble = header.dump();
    if (preamble.size() > kBinaryPreambleSize)
        throw IoError("binary trace preamble exceeds 64 bytes (unit string too long?)");
    preamble.resize(kBinaryPreambleSize, ' ');
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open for writing: " + path);
    out.write(preamble.data(), static_cast<std::streamsize>(preamble.size()));
    out.write(reinterpret_cast<const char*>(trace.samples.data()),
              static_cast<std::streamsize>(trace.samples.size() * sizeof(double)));
    if (!out)
        throw IoError("write failed: " + path);
}

inline Trace read_trace_bin(const std::string& path) {
    static_assert(std::endian::native == std::endian::little,
                  "binary trace reader assumes a little-endian host");
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in)
        throw IoError("cannot open: " + path);
    const std::streamsize size = in.tellg();
    if (size < static_cast<std::streamsize>(kBinaryPreambleSize))
        throw IoError(path + ": shorter than the 64-byte preamble");
    const std::streamsize payload = size - static_cast<std::streamsize>(kBinaryPreambleSize);
    if (payload % static_cast<std::streamsize>(sizeof(double)) != 0) {
        std::ostringstream os;
        os << path << ": payload of " << payload << " bytes at offset "
           << kBinaryPreambleSize << " is not a whole number of float64 samples";
        throw IoError(os.str());
    }
    in.seekg(0);
    std::string preamble(kBinaryPreambleSize, '\0');
    in.read(preamble.data(), static_cast<std::streamsize>(kBinaryPreambleSize));
    Trace trace;
    try {
        const auto header = nlohmann::json::parse(preamble);
        trace.sample_rate = header.at("sr").get<double>();
        trace.t0 = header.value("t0", 0.0);
        trace.unit = header.value("u", "V");
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path + ": bad JSON preamble: " + e.what());
    }
    trace.samples.resize(static_cast<std::size_t>(payload) / sizeof(double));
    in.read(reinterpret_cast<char*>(trace.samples.data()), payload);
    if (!in)
        throw IoError("read failed: " + path);
    trace.validate();
    return trace;
}

/// Dispatch on extension: ".bin" -> packed binary, anything else -> CSV.
inline void write_trace(const std::string& path, const Trace& trace) {
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".bin") == 0)
        write_trace_bin(path, trace);
    else
        write_trace_csv(path, trace);
}

inline Trace read_trace(const std::string& path) {
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".bin") == 0)
        return read_trace_bin(path);
    return read_trace_csv(path);
}

} // namespace tdo

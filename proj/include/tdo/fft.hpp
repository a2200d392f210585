#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <fftw3.h>

#include "tdo/errors.hpp"

namespace tdo::fft {

/// Smallest 5-smooth (2^a 3^b 5^c) size >= n. FFTW stays fast on these.
inline std::size_t next_fast_size(std::size_t n) {
    if (n <= 2) return 2;
    while (true) {
        std::size_t m = n;
        while (m % 2 == 0) m /= 2;
        while (m % 3 == 0) m /= 3;
        while (m % 5 == 0) m /= 5;
        if (m == 1) return n;
        ++n;
    }
}

/// Largest 5-smooth size <= n (n must be >= 2).
inline std::size_t prev_fast_size(std::size_t n) {
    if (n < 2)
        throw ValidationError("prev_fast_size: n must be >= 2");
    while (true) {
        std::size_t m = n;
        while (m % 2 == 0) m /= 2;
        while (m % 3 == 0) m /= 3;
        while (m % 5 == 0) m /= 5;
        if (m == 1) return n;
        --n;
    }
}

/// Forward complex DFT (unnormalized, matching the usual e^{-j2pi nk/N} sum).
inline std::vector<std::complex<double>> fft(std::vector<std::complex<double>> in) {
    const std::size_t n = in.size();
    std::vector<std::complex<double>> out(n);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n),
                                      reinterpret_cast<fftw_complex*>(in.data()),
                                      reinterpret_cast<fftw_complex*>(out.data()),
                                      FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    return out;
}

/// Inverse complex DFT, normalized by 1/N (true inverse of fft()).
inline std::vector<std::complex<double>> ifft(std::vector<std::complex<double>> in) {
    const std::size_t n = in.size();
    std::vector<std::complex<double>> out(n);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n),
                                      reinterpret_cast<fftw_complex*>(in.data()),
                                      reinterpret_cast<fftw_complex*>(out.data()),
                                      FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : out) v *= scale;
    return out;
}

/// Real-input DFT of length n_fft (input zero-padded); returns n_fft/2 + 1 bins.
inline std::vector<std::complex<double>> rfft(const std::vector<double>& in, std::size_t n_fft) {
    if (n_fft < in.size())
        throw ValidationError("rfft: n_fft smaller than input length");
    std::vector<double> padded(n_fft, 0.0);
    std::copy(in.begin(), in.end(), padded.begin());
    std::vector<std::complex<double>> out(n_fft / 2 + 1);
    fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(n_fft), padded.data(),
                                          reinterpret_cast<fftw_complex*>(out.data()),
                                          FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    return out;
}

/// Inverse of rfft: half-spectrum (n/2+1 bins) back to n real samples, 1/N normalized.
inline std::vector<double> irfft(std::vector<std::complex<double>> half, std::size_t n) {
    if (half.size() != n / 2 + 1)
        throw ValidationError("irfft: half spectrum size does not match n");
    std::vector<double> out(n);
    fftw_plan plan = fftw_plan_dft_c2r_1d(static_cast<int>(n),
                                          reinterpret_cast<fftw_complex*>(half.data()),
                                          out.data(), FFTW_ESTIMATE);
    fftw_execute(plan); // destroys `half`, which is our private copy
    fftw_destroy_plan(plan);
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : out) v *= scale;
    return out;
}

/// Analytic signal via the one-sided spectrum construction: zero the negative
/// frequencies, double the positive ones, inverse transform. Uses the exact
/// input length (no padding) so a periodic-in-window tone stays leakage-free.
inline std::vector<std::complex<double>> analytic_signal(const std::vector<double>& x) {
    const std::size_t n = x.size();
    if (n < 4)
        throw ValidationError("analytic_signal: trace too short");
    auto half = rfft(x, n);
    std::vector<std::complex<double>> spectrum(n, {0.0, 0.0});
    spectrum[0] = half[0];
    const std::size_t half_n = n / 2;
    for (std::size_t k = 1; k < half_n; ++k)
        spectrum[k] = 2.0 * half[k];
    if (n % 2 == 0)
        spectrum[half_n] = half[half_n];
    else
        spectrum[half_n] = 2.0 * half[half_n];
    return ifft(std::move(spectrum));
}

} // namespace tdo::fft

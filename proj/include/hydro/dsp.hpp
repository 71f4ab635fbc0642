// SPDX-License-Identifier: Apache-2.0
//
// hydrolink - underwater acoustic link simulation and target detection

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace hydro::dsp {

using cplx = std::complex<double>;

/// In-place radix-2 FFT. Size must be a power of two.
/// Forward convention: X(k) = sum_n x(n) exp(-j 2 pi n k / N).
void fft(std::vector<cplx> &x);

/// Inverse of fft(), with 1/N normalization.
void ifft(std::vector<cplx> &x);

bool is_pow2(std::size_t n);

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

/// Root-raised-cosine pulse value at time t (in symbol periods), unit symbol period.
double rrc_pulse(double t, double rolloff);

/// Discrete RRC taps spanning [-span/2, span/2] symbols at sps samples per
/// symbol, normalized to unit energy (sum of squares = 1) so the
/// transmit/receive cascade peaks at 1 when sampled at symbol spacing.
std::vector<double> rrc_taps(double rolloff, int span_symbols, int sps);

/// Catmull-Rom interpolation of x at fractional index pos.
/// Indices outside [0, size) read as zero.
double spline_at(const std::vector<double> &x, double pos);
cplx spline_at(const std::vector<cplx> &x, double pos);

/// Full convolution, output length a.size() + b.size() - 1.
std::vector<cplx> convolve(const std::vector<cplx> &a, const std::vector<double> &b);
std::vector<double> convolve(const std::vector<double> &a, const std::vector<double> &b);

/// CRC-32 (IEEE 802.3, reflected, poly 0xEDB88320).
std::uint32_t crc32(const void *data, std::size_t len, std::uint32_t seed = 0);

/// Deterministic RNG wrapper. std::normal_distribution and friends are
/// implementation-defined, so draws are produced by hand to keep outputs
/// byte-identical for a given seed on any standard library.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform in [0, 1).
    double uniform();
    /// Uniform in [lo, hi).
    double uniform(double lo, double hi);
    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);
    /// Standard normal via Box-Muller.
    double normal();
    /// Complex circular normal with unit variance per complex sample.
    cplx cnormal();
    /// Derive an independent stream for a sub-task.
    Rng fork(std::uint64_t salt);

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Run fn(i) for i in [0, n) across worker threads. Falls back to a plain
/// loop when n is small or only one hardware thread is available.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn);

} // namespace hydro::dsp

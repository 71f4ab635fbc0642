// SPDX-License-Identifier: Apache-2.0
//
// hydrolink - underwater acoustic link simulation and target detection

#include "hydro/dsp.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace hydro::dsp {

namespace {

constexpr double kPi = std::numbers::pi;

void fft_core(std::vector<cplx> &x, double sign) {
    const std::size_t n = x.size();
    if (!is_pow2(n))
        throw std::invalid_argument("fft: size must be a power of two");

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(x[i], x[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * kPi / static_cast<double>(len);
        const cplx wstep(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx u = x[i + k];
                const cplx v = x[i + k + len / 2] * w;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
                w *= wstep;
            }
        }
    }
}

} // namespace

bool is_pow2(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n)
        p <<= 1;
    return p;
}

void fft(std::vector<cplx> &x) {
    fft_core(x, -1.0);
}

void ifft(std::vector<cplx> &x) {
    fft_core(x, +1.0);
    const double inv = 1.0 / static_cast<double>(x.size());
    for (auto &v : x)
        v *= inv;
}

double rrc_pulse(double t, double rolloff) {
    const double b = rolloff;
    const double at = std::abs(t);
    if (at < 1e-12)
        return 1.0 - b + 4.0 * b / kPi;
    // singularity at t = 1/(4 b)
    if (b > 0.0 && std::abs(at - 1.0 / (4.0 * b)) < 1e-9) {
        const double c = b / std::sqrt(2.0);
        return c * ((1.0 + 2.0 / kPi) * std::sin(kPi / (4.0 * b)) +
                    (1.0 - 2.0 / kPi) * std::cos(kPi / (4.0 * b)));
    }
    const double num = std::sin(kPi * t * (1.0 - b)) + 4.0 * b * t * std::cos(kPi * t * (1.0 + b));
    const double den = kPi * t * (1.0 - 16.0 * b * b * t * t);
    return num / den;
}

std::vector<double> rrc_taps(double rolloff, int span_symbols, int sps) {
    const int half = span_symbols * sps / 2;
    std::vector<double> taps(2 * half + 1);
    double energy = 0.0;
    for (int n = -half; n <= half; ++n) {
        const double v = rrc_pulse(static_cast<double>(n) / sps, rolloff);
        taps[n + half] = v;
        energy += v * v;
    }
    const double scale = 1.0 / std::sqrt(energy);
    for (auto &v : taps)
        v *= scale;
    return taps;
}

namespace {

template <typename T> T spline_at_impl(const std::vector<T> &x, double pos) {
    const double fl = std::floor(pos);
    const double f = pos - fl;
    const long i1 = static_cast<long>(fl);
    auto at = [&](long i) -> T {
        return (i >= 0 && i < static_cast<long>(x.size())) ? x[static_cast<std::size_t>(i)] : T{};
    };
    const T p0 = at(i1 - 1);
    const T p1 = at(i1);
    const T p2 = at(i1 + 1);
    const T p3 = at(i1 + 2);
    // Catmull-Rom
    const T a = p1;
    const T b = 0.5 * (p2 - p0);
    const T c = p0 - 2.5 * p1 + 2.0 * p2 - 0.5 * p3;
    const T d = 0.5 * (p3 - p0) + 1.5 * (p1 - p2);
    return a + f * (b + f * (c + f * d));
}

} // namespace

double spline_at(const std::vector<double> &x, double pos) {
    return spline_at_impl(x, pos);
}

cplx spline_at(const std::vector<cplx> &x, double pos) {
    return spline_at_impl(x, pos);
}

std::vector<cplx> convolve(const std::vector<cplx> &a, const std::vector<double> &b) {
    std::vector<cplx> out(a.size() + b.size() - 1, cplx{});
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

std::vector<double> convolve(const std::vector<double> &a, const std::vector<double> &b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

std::uint32_t crc32(const void *data, std::size_t len, std::uint32_t seed) {
    static const auto table = [] {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t i = 0; i < 256; ++i) {
            std::uint32_t c = i;
            for (int k = 0; k < 8; ++k)
                c = (c & 1u) ? 0xEDB88320u ^ (c >> 1) : (c >> 1);
            t[i] = c;
        }
        return t;
    }();
    const auto *p = static_cast<const unsigned char *>(data);
    std::uint32_t c = seed ^ 0xFFFFFFFFu;
    for (std::size_t i = 0; i < len; ++i)
        c = table[(c ^ p[i]) & 0xFFu] ^ (c >> 8);
    return c ^ 0xFFFFFFFFu;
}

double Rng::uniform() {
    // 53 random bits into [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

std::uint64_t Rng::below(std::uint64_t n) {
    return gen_() % n;
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0)
        u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * kPi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

cplx Rng::cnormal() {
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

Rng Rng::fork(std::uint64_t salt) {
    return Rng(gen_() ^ (salt * 0x9E3779B97F4A7C15ull));
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn) {
    const unsigned hw = std::thread::hardware_concurrency();
    if (hw <= 1 || n < 64) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    const unsigned workers = std::min<std::size_t>(hw, n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers)
                fn(i);
        });
    }
    for (auto &t : pool)
        t.join();
}

} // namespace hydro::dsp

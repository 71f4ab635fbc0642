// SPDX-License-Identifier: Apache-2.0
//
// hydrolink - underwater acoustic link simulation and target detection

#pragma once

#include <complex>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "hydro/errors.hpp"

namespace hydro::io {

/// Growable little-endian byte sink for the binary file formats.
class Writer {
  public:
    void raw(const void *p, std::size_t n) {
        const auto *b = static_cast<const unsigned char *>(p);
        buf_.insert(buf_.end(), b, b + n);
    }
    void u16(std::uint16_t v) { raw(&v, sizeof v); }
    void u32(std::uint32_t v) { raw(&v, sizeof v); }
    void u64(std::uint64_t v) { raw(&v, sizeof v); }
    void f64(double v) { raw(&v, sizeof v); }
    void c128(std::complex<double> v) {
        f64(v.real());
        f64(v.imag());
    }
    void magic(const char m[4]) { raw(m, 4); }

    const std::vector<unsigned char> &bytes() const { return buf_; }

  private:
    std::vector<unsigned char> buf_;
};

/// Bounds-checked reader over a loaded file image. Running out of bytes
/// raises TruncationError.
class Reader {
  public:
    explicit Reader(const std::vector<unsigned char> &buf) : buf_(buf) {}

    void raw(void *p, std::size_t n) {
        if (pos_ + n > buf_.size())
            throw TruncationError("file truncated: needed " + std::to_string(n) + " bytes at offset " +
                                  std::to_string(pos_));
        std::memcpy(p, buf_.data() + pos_, n);
        pos_ += n;
    }
    std::uint16_t u16() { return get<std::uint16_t>(); }
    std::uint32_t u32() { return get<std::uint32_t>(); }
    std::uint64_t u64() { return get<std::uint64_t>(); }
    double f64() { return get<double>(); }
    std::complex<double> c128() {
        const double re = f64();
        const double im = f64();
        return {re, im};
    }
    void expect_magic(const char m[4], const std::string &what) {
        char got[4];
        raw(got, 4);
        if (std::memcmp(got, m, 4) != 0)
            throw FormatError(what + ": bad magic bytes");
    }
    std::size_t pos() const { return pos_; }
    std::size_t remaining() const { return buf_.size() - pos_; }

  private:
    template <typename T> T get() {
        T v;
        raw(&v, sizeof v);
        return v;
    }
    const std::vector<unsigned char> &buf_;
    std::size_t pos_ = 0;
};

/// Whole-file read; MissingArtifactError when absent.
std::vector<unsigned char> read_file(const std::filesystem::path &path);

/// Write via a temporary file in the same directory, then rename over the
/// destination, so partially written artifacts are never observed.
void atomic_write(const std::filesystem::path &path, const void *data, std::size_t len);
void atomic_write(const std::filesystem::path &path, const std::string &text);

} // namespace hydro::io

// SPDX-License-Identifier: Apache-2.0
//
// hydrolink - underwater acoustic link simulation and target detection

#include "hydro/io.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>

namespace hydro::io {

std::vector<unsigned char> read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw MissingArtifactError("cannot open " + path.string());
    in.seekg(0, std::ios::end);
    const auto size = static_cast<std::size_t>(in.tellg());
    in.seekg(0, std::ios::beg);
    std::vector<unsigned char> buf(size);
    if (size > 0)
        in.read(reinterpret_cast<char *>(buf.data()), static_cast<std::streamsize>(size));
    if (!in)
        throw TruncationError("short read from " + path.string());
    return buf;
}

void atomic_write(const std::filesystem::path &path, const void *data, std::size_t len) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error("cannot open " + tmp.string() + " for writing");
        out.write(static_cast<const char *>(data), static_cast<std::streamsize>(len));
        if (!out)
            throw Error("short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw Error("rename " + tmp.string() + " -> " + path.string() + ": " + ec.message());
}

void atomic_write(const std::filesystem::path &path, const std::string &text) {
    atomic_write(path, text.data(), text.size());
}

} // namespace hydro::io

// SPDX-License-Identifier: Apache-2.0

#include "wgsr/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

namespace wgsr {

namespace {

constexpr char kMagic[8] = {'W', 'G', 'S', 'R', 'C', 'K', 'P', 'T'};
constexpr uint32_t kVersion = 1;

void put_u32(std::ostream& os, uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16),
                          static_cast<unsigned char>(v >> 24)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    if (!is) throw Error("checkpoint: truncated file");
    return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
           (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
}

void put_f32(std::ostream& os, const float* v, size_t n) {
    // little-endian host assumed; static_assert guards the build
    static_assert(sizeof(float) == 4);
    os.write(reinterpret_cast<const char*>(v), static_cast<std::streamsize>(n * 4));
}

}  // namespace

void save_checkpoint(const Params& params, const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("checkpoint: cannot open '" + path + "' for writing");
    os.write(kMagic, 8);
    put_u32(os, kVersion);
    put_u32(os, static_cast<uint32_t>(params.items.size()));
    for (const auto& [name, t] : params.items) {
        put_u32(os, static_cast<uint32_t>(name.size()));
        os.write(name.data(), static_cast<std::streamsize>(name.size()));
        put_u32(os, 0);  // dtype float32
        put_u32(os, 4);  // rank
        put_u32(os, static_cast<uint32_t>(t.shape.n));
        put_u32(os, static_cast<uint32_t>(t.shape.c));
        put_u32(os, static_cast<uint32_t>(t.shape.h));
        put_u32(os, static_cast<uint32_t>(t.shape.w));
        put_f32(os, t.val(), t.numel());
    }
    if (!os) throw Error("checkpoint: write failed for '" + path + "'");
}

void load_checkpoint(Params& params, const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("checkpoint: cannot open '" + path + "'");
    char magic[8];
    is.read(magic, 8);
    if (!is || std::memcmp(magic, kMagic, 8) != 0)
        throw Error("checkpoint: bad magic in '" + path + "'");
    if (get_u32(is) != kVersion) throw Error("checkpoint: unsupported version");
    const uint32_t count = get_u32(is);
    if (count != params.items.size())
        throw Error("checkpoint: tensor count mismatch (" + std::to_string(count) +
                    " in file, " + std::to_string(params.items.size()) + " expected)");
    for (auto& [name, t] : params.items) {
        const uint32_t len = get_u32(is);
        std::string fname(len, '\0');
        is.read(fname.data(), len);
        if (!is || fname != name)
            throw Error("checkpoint: parameter '" + name + "' not at expected position");
        if (get_u32(is) != 0) throw Error("checkpoint: unknown dtype for '" + name + "'");
        if (get_u32(is) != 4) throw Error("checkpoint: unexpected rank for '" + name + "'");
        const ad::Shape s{static_cast<int>(get_u32(is)), static_cast<int>(get_u32(is)),
                          static_cast<int>(get_u32(is)), static_cast<int>(get_u32(is))};
        if (!(s == t.shape))
            throw Error("checkpoint: shape mismatch for '" + name + "': file " + s.str() +
                        " vs model " + t.shape.str());
        is.read(reinterpret_cast<char*>(t.val()),
                static_cast<std::streamsize>(t.numel() * 4));
        if (!is) throw Error("checkpoint: truncated payload for '" + name + "'");
    }
}

}  // namespace wgsr

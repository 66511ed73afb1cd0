#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>

#include "fpou/errors.hpp"
#include "fpou/kernel.hpp"

namespace fpou {

namespace {

constexpr char kMagic[4] = {'F', 'P', 'O', 'U'};
constexpr uint32_t kVersion = 1;

uint64_t fnv1a(const unsigned char* data, size_t len) {
    uint64_t h = 14695981039346656037ULL;
    for (size_t i = 0; i < len; ++i) {
        h ^= data[i];
        h *= 1099511628211ULL;
    }
    return h;
}

template <class T>
void put(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
void get(std::istream& in, T& v) {
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!in) throw FormatError("cache file truncated");
}

[[noreturn]] void mismatch(const std::string& field, double have, double want) {
    throw FormatError("cache header mismatch in field '" + field + "': file has " +
                      std::to_string(have) + ", requested " + std::to_string(want));
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

uint64_t table_checksum(const CoefficientTable& table) {
    return fnv1a(reinterpret_cast<const unsigned char*>(table.entries.data()),
                 table.entries.size() * sizeof(double));
}

void cache_write(const CoefficientTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot open cache file for writing: " + path);
    out.write(kMagic, 4);
    put(out, kVersion);
    put(out, static_cast<uint64_t>(table.m));
    put(out, static_cast<uint64_t>(table.n));
    put(out, table.hurst);
    put(out, table.lambda);
    put(out, static_cast<uint32_t>(table.quad.inner));
    put(out, static_cast<uint32_t>(table.quad.outer));
    out.write(reinterpret_cast<const char*>(table.entries.data()),
              static_cast<std::streamsize>(table.entries.size() * sizeof(double)));
    put(out, table_checksum(table));
    out.flush();
    if (!out) throw FormatError("write failed for cache file: " + path);
}

CoefficientTable cache_read(const std::string& path, int m, int n, double hurst,
                            double lambda, const QuadMeta& quad) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open cache file: " + path);

    char magic[4] = {};
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw FormatError("cache file has wrong magic");
    uint32_t version = 0;
    get(in, version);
    if (version != kVersion)
        throw FormatError("cache header mismatch in field 'version': file has " +
                          std::to_string(version) + ", requested " +
                          std::to_string(kVersion));

    uint64_t file_m = 0, file_n = 0;
    double file_h = 0.0, file_lambda = 0.0;
    uint32_t file_inner = 0, file_outer = 0;
    get(in, file_m);
    get(in, file_n);
    get(in, file_h);
    get(in, file_lambda);
    get(in, file_inner);
    get(in, file_outer);
    if (file_m != static_cast<uint64_t>(m))
        mismatch("m", static_cast<double>(file_m), m);
    if (file_n != static_cast<uint64_t>(n))
        mismatch("n", static_cast<double>(file_n), n);
    if (!same_bits(file_h, hurst)) mismatch("hurst", file_h, hurst);
    if (!same_bits(file_lambda, lambda)) mismatch("lambda", file_lambda, lambda);
    if (file_inner != static_cast<uint32_t>(quad.inner))
        mismatch("inner order", file_inner, quad.inner);
    if (file_outer != static_cast<uint32_t>(quad.outer))
        mismatch("outer order", file_outer, quad.outer);

    CoefficientTable table;
    table.m = m;
    table.n = n;
    table.hurst = hurst;
    table.lambda = lambda;
    table.quad = quad;
    table.entries.resize(static_cast<size_t>(n) * (n + 1) / 2);
    in.read(reinterpret_cast<char*>(table.entries.data()),
            static_cast<std::streamsize>(table.entries.size() * sizeof(double)));
    if (in.gcount() !=
        static_cast<std::streamsize>(table.entries.size() * sizeof(double)))
        throw FormatError("cache file truncated");

    uint64_t stored = 0;
    get(in, stored);
    if (stored != table_checksum(table))
        throw FormatError("cache payload checksum mismatch");
    return table;
}

}  // namespace fpou

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "triplewell/spectra.hpp"

namespace triplewell {

namespace {

constexpr char kMagic[4] = {'T', 'W', '3', 'W'};
constexpr std::uint32_t kFormatVersion = 1;

struct CacheHeader {
    char magic[4];
    std::uint32_t version;
    std::int64_t n;
    double u;
    double j;
    double epsilon;
    std::int64_t dim;
};

CacheHeader read_header(std::ifstream& in, const std::string& path) {
    CacheHeader h{};
    in.read(reinterpret_cast<char*>(&h), sizeof(h));
    if (!in || std::memcmp(h.magic, kMagic, 4) != 0)
        throw std::runtime_error("eigensystem cache: bad magic in " + path);
    if (h.version != kFormatVersion)
        throw std::runtime_error("eigensystem cache: unsupported version in " + path);
    return h;
}

}  // namespace

void save_eigensystem(const EigenSystem& es, const std::string& path) {
    // write-then-rename so a partial write never poisons the cache
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp);
        CacheHeader h{};
        std::memcpy(h.magic, kMagic, 4);
        h.version = kFormatVersion;
        h.n = es.params.N;
        h.u = es.params.U;
        h.j = es.params.J;
        h.epsilon = es.params.epsilon;
        h.dim = std::int64_t(es.dim());
        out.write(reinterpret_cast<const char*>(&h), sizeof(h));
        out.write(reinterpret_cast<const char*>(es.energies.data()),
                  std::streamsize(es.energies.size() * sizeof(double)));
        out.write(reinterpret_cast<const char*>(es.vectors.data()),
                  std::streamsize(es.vectors.size() * sizeof(double)));
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

EigenSystem load_eigensystem(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    CacheHeader h = read_header(in, path);
    ModelParams params{h.u, h.j, h.epsilon, int(h.n)};
    FockBasis basis(params.N);
    if (std::size_t(h.dim) != basis.dimension())
        throw std::runtime_error("eigensystem cache: dimension mismatch in " + path);
    EigenSystem es{params, basis, std::vector<double>(std::size_t(h.dim)),
                   std::vector<double>(std::size_t(h.dim) * std::size_t(h.dim))};
    in.read(reinterpret_cast<char*>(es.energies.data()),
            std::streamsize(es.energies.size() * sizeof(double)));
    in.read(reinterpret_cast<char*>(es.vectors.data()),
            std::streamsize(es.vectors.size() * sizeof(double)));
    if (!in) throw std::runtime_error("truncated cache file: " + path);
    return es;
}

bool eigensystem_cache_matches(const std::string& path, const ModelParams& params) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    try {
        CacheHeader h = read_header(in, path);
        return h.n == params.N && h.u == params.U && h.j == params.J &&
               h.epsilon == params.epsilon;
    } catch (const std::runtime_error&) {
        return false;
    }
}

}  // namespace triplewell

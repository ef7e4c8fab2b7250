#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include "hriesz/biradial.hpp"
#include "hriesz/grid.hpp"
#include "hriesz/spectral.hpp"

namespace hriesz {

// Raised for unreadable, truncated or checksum-failing files.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// 64-bit FNV-1a.
std::uint64_t fnv1a(const void* data, std::size_t bytes, std::uint64_t h = 0xcbf29ce484222325ull);
std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 0xcbf29ce484222325ull);
std::string hex64(std::uint64_t v);

// One JSON header line, then little-endian (re, im) doubles in grid order.
void write_field(const std::string& path, const SampledField& f);
SampledField read_field(const std::string& path);

// Header line naming the spectral grid, planar grid, t axis and the cache key,
// then one planar array per node in node order.
void write_coefficients(const std::string& path, const SpectralCoefficients& c, const std::string& key);
// Throws FormatError on corruption or when the stored key differs from `key` (if non-empty).
SpectralCoefficients read_coefficients(const std::string& path, const std::string& key = "");

// Key from the content description of f, its grid, kmax and the λ-rule.
std::string coefficient_key(const std::string& function_desc, const Grid& grid, const SpectralGrid& s);

struct CacheResult {
    SpectralCoefficients coeffs;
    bool from_cache = false;
    std::string warning;  // set when a cache file existed but was rejected
};
// Loads `path` when its key matches, otherwise computes, stores and returns.
CacheResult cached_analysis(const std::string& path, const std::string& key,
                            const std::function<SpectralCoefficients()>& compute);

// CSV columns r1,t1,r2,t2,re,im,tail_est plus a JSON sidecar `<path>.json`.
void write_kernel_table(const std::string& path, const KernelTable& t);

}  // namespace hriesz

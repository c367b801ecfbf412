#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "boxzeta/cmforms.hpp"
#include "boxzeta/lfunc.hpp"
#include "boxzeta/tracefit.hpp"

namespace boxzeta {

inline constexpr int kCacheFormatVersion = 1;

struct CacheKey {
    std::string kind;  // variety or form id, e.g. "surface", "curve-x", "g64"
    std::uint32_t p = 0;
    int degree = 1;
    std::string method = "fast";
    std::string conventions = "none";

    // "kind=<k>;p=<p>;degree=<d>;method=<m>;conv=<c>"; fields may not contain ';' or '='.
    std::string canonical() const;
    static std::optional<CacheKey> parse(std::string_view text);

    friend bool operator==(const CacheKey&, const CacheKey&) = default;
};

// Integer or integer pair; no floating point is ever cached.
struct CacheValue {
    std::vector<std::int64_t> ints;

    static CacheValue integer(std::int64_t v) { return {{v}}; }
    static CacheValue pair(std::int64_t a, std::int64_t b) { return {{a, b}}; }
    friend bool operator==(const CacheValue&, const CacheValue&) = default;
};

/// One JSON file per kind under a cache directory. Files are replaced
/// atomically; writers serialize on an flock'd lock file.
class Store {
public:
    explicit Store(std::filesystem::path dir);

    // --cache-dir wins over BOXZETA_CACHE; nullopt means caching is off.
    static std::optional<std::filesystem::path> resolve_dir(const std::optional<std::string>& flag);

    const std::filesystem::path& dir() const { return dir_; }
    std::filesystem::path file_for(std::string_view kind) const;

    std::optional<CacheValue> lookup(const CacheKey& key) const;
    CacheValue get_or_compute(const CacheKey& key, const std::function<CacheValue()>& compute);

    std::vector<CacheKey> keys(std::string_view kind) const;

    struct SweepResult {
        std::size_t checked = 0;
        std::size_t mismatched = 0;
    };
    // Recomputes up to `sample` entries of `kind`, chosen by a seeded shuffle,
    // and overwrites any that disagree.
    SweepResult integrity_sweep(std::string_view kind, std::size_t sample, std::uint64_t seed,
                                const std::function<CacheValue(const CacheKey&)>& recompute);

private:
    void write_entry(const CacheKey& key, const CacheValue& value);

    std::filesystem::path dir_;
    mutable std::mutex mutex_;
};

// Compute functions that go through the store when one is given.
SurfaceCounter cached_surface_counter(Store* store);
CountLookup cached_curve_x_counter(Store* store, int degree);
std::function<CoeffPair(std::uint32_t)> cached_g_pair(Store* store);
ExportSources cached_sources(Store* store);

}  // namespace boxzeta

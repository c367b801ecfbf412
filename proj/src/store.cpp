#include "boxzeta/store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "boxzeta/counting.hpp"

namespace boxzeta {
namespace {

using Json = nlohmann::json;

void warn(const std::string& msg) { std::cerr << "boxzeta: warning: " << msg << "\n"; }

bool valid_field(std::string_view s) {
    return !s.empty() && s.find(';') == std::string_view::npos && s.find('=') == std::string_view::npos;
}

std::optional<CacheValue> decode_value(const Json& v) {
    if (v.is_number_integer()) return CacheValue::integer(v.get<std::int64_t>());
    if (v.is_array() && v.size() == 2 && v[0].is_number_integer() && v[1].is_number_integer()) {
        return CacheValue::pair(v[0].get<std::int64_t>(), v[1].get<std::int64_t>());
    }
    return std::nullopt;
}

Json encode_value(const CacheValue& v) {
    if (v.ints.size() == 1) return v.ints[0];
    return Json::array({v.ints.at(0), v.ints.at(1)});
}

struct FileContents {
    std::map<std::string, CacheValue> valid;
    std::vector<std::string> corrupt_keys;  // entries present but unreadable
};

FileContents load_file(const std::filesystem::path& path, std::string_view kind) {
    FileContents out;
    std::ifstream in(path, std::ios::binary);
    if (!in) return out;
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const std::exception& e) {
        warn("unreadable cache file " + path.string() + " (" + e.what() + "); entries will be recomputed");
        return out;
    }
    if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array()) {
        warn("malformed cache file " + path.string() + "; entries will be recomputed");
        return out;
    }
    for (const auto& e : doc["entries"]) {
        if (!e.is_object() || !e.contains("key") || !e["key"].is_string()) {
            warn("cache entry without key in " + path.string());
            continue;
        }
        const auto key_text = e["key"].get<std::string>();
        auto key = CacheKey::parse(key_text);
        const bool version_ok = e.contains("version") && e["version"].is_number_integer() &&
                                e["version"].get<int>() == kCacheFormatVersion;
        std::optional<CacheValue> value = e.contains("value") ? decode_value(e["value"]) : std::nullopt;
        if (!key || key->kind != kind || key->canonical() != key_text || !version_ok || !value) {
            out.corrupt_keys.push_back(key_text);
            continue;
        }
        out.valid[key_text] = *value;
    }
    return out;
}

class FileLock {
public:
    explicit FileLock(const std::filesystem::path& path) {
        fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
        if (fd_ < 0) throw std::runtime_error("cache: cannot open lock file " + path.string());
        if (::flock(fd_, LOCK_EX) != 0) {
            ::close(fd_);
            throw std::runtime_error("cache: cannot lock " + path.string());
        }
    }
    ~FileLock() {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
    FileLock(const FileLock&) = delete;
    FileLock& operator=(const FileLock&) = delete;

private:
    int fd_ = -1;
};

}  // namespace

std::string CacheKey::canonical() const {
    std::ostringstream out;
    out << "kind=" << kind << ";p=" << p << ";degree=" << degree << ";method=" << method << ";conv=" << conventions;
    return out.str();
}

std::optional<CacheKey> CacheKey::parse(std::string_view text) {
    std::map<std::string, std::string> fields;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find(';', start);
        if (end == std::string_view::npos) end = text.size();
        auto part = text.substr(start, end - start);
        auto eq = part.find('=');
        if (eq == std::string_view::npos) return std::nullopt;
        fields.emplace(std::string(part.substr(0, eq)), std::string(part.substr(eq + 1)));
        start = end + 1;
    }
    if (fields.size() != 5) return std::nullopt;
    try {
        CacheKey k;
        k.kind = fields.at("kind");
        k.p = static_cast<std::uint32_t>(std::stoul(fields.at("p")));
        k.degree = std::stoi(fields.at("degree"));
        k.method = fields.at("method");
        k.conventions = fields.at("conv");
        if (!valid_field(k.kind) || !valid_field(k.method) || !valid_field(k.conventions)) return std::nullopt;
        return k;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

Store::Store(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw std::runtime_error("cache: cannot create " + dir_.string() + ": " + ec.message());
}

std::optional<std::filesystem::path> Store::resolve_dir(const std::optional<std::string>& flag) {
    if (flag && !flag->empty()) return std::filesystem::path(*flag);
    if (const char* env = std::getenv("BOXZETA_CACHE"); env && *env) return std::filesystem::path(env);
    return std::nullopt;
}

std::filesystem::path Store::file_for(std::string_view kind) const {
    if (!valid_field(kind) || kind.find('/') != std::string_view::npos) {
        throw std::invalid_argument("cache: bad kind " + std::string(kind));
    }
    return dir_ / (std::string(kind) + ".json");
}

std::optional<CacheValue> Store::lookup(const CacheKey& key) const {
    std::lock_guard lock(mutex_);
    auto contents = load_file(file_for(key.kind), key.kind);
    auto it = contents.valid.find(key.canonical());
    if (it == contents.valid.end()) return std::nullopt;
    return it->second;
}

CacheValue Store::get_or_compute(const CacheKey& key, const std::function<CacheValue()>& compute) {
    {
        std::lock_guard lock(mutex_);
        auto contents = load_file(file_for(key.kind), key.kind);
        const auto canon = key.canonical();
        if (auto it = contents.valid.find(canon); it != contents.valid.end()) return it->second;
        if (std::find(contents.corrupt_keys.begin(), contents.corrupt_keys.end(), canon) != contents.corrupt_keys.end()) {
            warn("corrupt cache entry " + canon + "; recomputing");
        }
    }
    CacheValue value = compute();
    write_entry(key, value);
    return value;
}

void Store::write_entry(const CacheKey& key, const CacheValue& value) {
    std::lock_guard lock(mutex_);
    FileLock file_lock(dir_ / ".lock");
    const auto path = file_for(key.kind);
    auto contents = load_file(path, key.kind);
    contents.valid[key.canonical()] = value;

    // Sorted by (p, degree, method, conventions) so the file is stable.
    std::vector<std::pair<CacheKey, CacheValue>> entries;
    for (const auto& [text, v] : contents.valid) entries.emplace_back(*CacheKey::parse(text), v);
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        return std::tie(a.first.p, a.first.degree, a.first.method, a.first.conventions) <
               std::tie(b.first.p, b.first.degree, b.first.method, b.first.conventions);
    });
    Json doc;
    doc["version"] = kCacheFormatVersion;
    doc["entries"] = Json::array();
    for (const auto& [k, v] : entries) {
        doc["entries"].push_back({{"key", k.canonical()}, {"value", encode_value(v)}, {"version", kCacheFormatVersion}});
    }

    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cache: cannot write " + tmp.string());
        out << doc.dump(1) << "\n";
        out.flush();
        if (!out) throw std::runtime_error("cache: write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw std::runtime_error("cache: cannot replace " + path.string() + ": " + ec.message());
}

std::vector<CacheKey> Store::keys(std::string_view kind) const {
    std::lock_guard lock(mutex_);
    std::vector<CacheKey> out;
    for (const auto& [text, v] : load_file(file_for(kind), kind).valid) out.push_back(*CacheKey::parse(text));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return std::tie(a.p, a.degree) < std::tie(b.p, b.degree);
    });
    return out;
}

Store::SweepResult Store::integrity_sweep(std::string_view kind, std::size_t sample, std::uint64_t seed,
                                          const std::function<CacheValue(const CacheKey&)>& recompute) {
    auto all = keys(kind);
    std::mt19937_64 rng(seed);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(std::min(sample, all.size()));
    SweepResult result;
    for (const auto& key : all) {
        auto cached = lookup(key);
        auto fresh = recompute(key);
        ++result.checked;
        if (!cached || !(*cached == fresh)) {
            ++result.mismatched;
            warn("cache entry " + key.canonical() + " disagrees with recomputation; overwriting");
            write_entry(key, fresh);
        }
    }
    return result;
}

SurfaceCounter cached_surface_counter(Store* store) {
    if (!store) return fast_surface_counter();
    return [store](std::uint32_t p) {
        CacheKey key{"surface", p, 1, "fast", "none"};
        return store->get_or_compute(key, [p] { return CacheValue::integer(count_surface_fast(p).count); }).ints[0];
    };
}

CountLookup cached_curve_x_counter(Store* store, int degree) {
    auto compute = [degree](std::uint32_t p) { return count_curve_x(p, degree).count; };
    if (!store) return compute;
    return [store, degree, compute](std::uint32_t p) {
        CacheKey key{"curve-x", p, degree, "fast", "none"};
        return store->get_or_compute(key, [&] { return CacheValue::integer(compute(p)); }).ints[0];
    };
}

std::function<CoeffPair(std::uint32_t)> cached_g_pair(Store* store) {
    if (!store) return [](std::uint32_t p) { return extract_g_pair(p); };
    return [store](std::uint32_t p) {
        require_odd_prime(p);
        if (p > 200) throw std::invalid_argument("extract_g_pair: p <= 200 required");
        CacheKey key{"g64", p, 2, "fast", "none"};
        auto v = store->get_or_compute(key, [&] {
            auto pair = extract_g_pair_from_counts(p, cached_curve_x_counter(store, 1)(p),
                                                   cached_curve_x_counter(store, 2)(p));
            return CacheValue::pair(pair.first().re, pair.first().im);
        });
        return CoeffPair(GaussianInt{v.ints.at(0), v.ints.at(1)});
    };
}

ExportSources cached_sources(Store* store) {
    return {cached_surface_counter(store), cached_curve_x_counter(store, 1), cached_g_pair(store)};
}

}  // namespace boxzeta

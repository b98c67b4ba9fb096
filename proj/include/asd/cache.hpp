#pragma once

#include "asd/qseries.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace asd::cache {

inline constexpr const char* kFormatVersion = "v1";

/// Canonical key: version, object kind, sorted parameters, precision.
std::string descriptor(const std::string& kind, const std::map<std::string, std::string>& params, long precision);
/// CRC-64 of the text as 16 hex digits.
std::string checksum(const std::string& text);

/// Directory of series files in the text format, one per descriptor hash, with a plain index.
class Cache {
public:
    explicit Cache(std::filesystem::path dir);
    /// Directory from ASD_CACHE_DIR, if set.
    static std::optional<Cache> from_env();

    const std::filesystem::path& dir() const { return dir_; }
    std::filesystem::path path_for(const std::string& key) const;

    void put_text(const std::string& key, const std::string& body);
    /// Nothing on a miss. Throws CorruptEntry when the stored checksum does not match.
    std::optional<std::string> get_text(const std::string& key) const;

    template <class R>
    void put(const std::string& key, const Series<R>& f) {
        put_text(key, series_to_text(f));
    }
    template <class R>
    std::optional<Series<R>> get(const std::string& key, typename RingTraits<R>::Ctx ctx = {}) const {
        auto body = get_text(key);
        if (!body) return std::nullopt;
        return series_from_text<R>(*body, ctx);
    }

    /// (hash, key) pairs from the index, sorted by hash.
    std::vector<std::pair<std::string, std::string>> index() const;
    /// Keys whose files are missing or fail the checksum.
    std::vector<std::string> verify() const;

private:
    std::filesystem::path dir_;
};

/// Header plus body, as stored in a cache file.
std::string entry_text(const std::string& key, const std::string& body);

/// Writes `text` to `path` through a temporary file in the same directory and a rename.
void atomic_write(const std::filesystem::path& path, const std::string& text);

}  // namespace asd::cache

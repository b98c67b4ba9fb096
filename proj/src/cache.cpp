#include "asd/cache.hpp"

#include <boost/crc.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <unistd.h>

namespace asd::cache {

namespace fs = std::filesystem;

namespace {

using Crc64 = boost::crc_optimal<64, 0x42F0E1EBA9EA3693ULL, ~0ULL, ~0ULL, true, true>;

std::mutex index_mutex;

std::string hex64(unsigned long long v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", v);
    return buf;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error("IoError", "cannot read " + p.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Splits "name=value"; the value is everything after the first '='.
std::optional<std::string> header_value(const std::string& line, const std::string& name) {
    if (line.rfind(name + "=", 0) != 0) return std::nullopt;
    return line.substr(name.size() + 1);
}

}  // namespace

std::string descriptor(const std::string& kind, const std::map<std::string, std::string>& params, long precision) {
    std::string s = std::string(kFormatVersion) + "|" + kind;
    for (const auto& [k, v] : params) s += "|" + k + "=" + v;
    return s + "|N=" + std::to_string(precision);
}

std::string checksum(const std::string& text) {
    Crc64 crc;
    crc.process_bytes(text.data(), text.size());
    return hex64(crc.checksum());
}

std::string entry_text(const std::string& key, const std::string& body) {
    return "asd-cache " + std::string(kFormatVersion) + "\nkey=" + key + "\nchecksum=" + checksum(body) + "\n" + body;
}

void atomic_write(const fs::path& path, const std::string& text) {
    std::ostringstream tag;
    tag << ".tmp." << ::getpid() << "." << std::this_thread::get_id();
    fs::path tmp = path;
    tmp += tag.str();
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("IoError", "cannot write " + tmp.string());
        out << text;
        out.flush();
        if (!out) throw Error("IoError", "short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

Cache::Cache(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

std::optional<Cache> Cache::from_env() {
    const char* d = std::getenv("ASD_CACHE_DIR");
    if (!d || !*d) return std::nullopt;
    return Cache(d);
}

fs::path Cache::path_for(const std::string& key) const { return dir_ / (checksum(key) + ".series"); }

void Cache::put_text(const std::string& key, const std::string& body) {
    atomic_write(path_for(key), entry_text(key, body));

    std::lock_guard<std::mutex> lock(index_mutex);
    auto entries = index();
    std::string h = checksum(key);
    bool present = false;
    for (const auto& e : entries) present = present || (e.first == h && e.second == key);
    if (present) return;
    entries.emplace_back(h, key);
    std::sort(entries.begin(), entries.end());
    std::string out;
    for (const auto& [hh, kk] : entries) out += hh + "\t" + kk + "\n";
    atomic_write(dir_ / "index.txt", out);
}

std::optional<std::string> Cache::get_text(const std::string& key) const {
    fs::path p = path_for(key);
    if (!fs::exists(p)) return std::nullopt;
    std::string text = read_file(p);
    std::istringstream is(text);
    std::string magic, kline, cline;
    if (!std::getline(is, magic) || !std::getline(is, kline) || !std::getline(is, cline))
        throw Error("CorruptEntry", "truncated header in " + p.string());
    if (magic != "asd-cache " + std::string(kFormatVersion)) throw Error("CorruptEntry", "bad magic in " + p.string());
    auto stored_key = header_value(kline, "key");
    auto stored_sum = header_value(cline, "checksum");
    if (!stored_key || !stored_sum) throw Error("CorruptEntry", "bad header in " + p.string());
    if (*stored_key != key) return std::nullopt;  // hash collision
    size_t offset = magic.size() + kline.size() + cline.size() + 3;
    std::string body = text.substr(std::min(offset, text.size()));
    if (checksum(body) != *stored_sum) throw Error("CorruptEntry", "checksum mismatch for " + key);
    return body;
}

std::vector<std::pair<std::string, std::string>> Cache::index() const {
    std::vector<std::pair<std::string, std::string>> out;
    fs::path p = dir_ / "index.txt";
    if (!fs::exists(p)) return out;
    std::istringstream is(read_file(p));
    std::string line;
    while (std::getline(is, line)) {
        auto tab = line.find('\t');
        if (tab == std::string::npos) continue;
        out.emplace_back(line.substr(0, tab), line.substr(tab + 1));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> Cache::verify() const {
    std::vector<std::string> bad;
    for (const auto& [h, key] : index()) {
        try {
            if (!get_text(key)) bad.push_back(key);
        } catch (const Error&) {
            bad.push_back(key);
        }
    }
    return bad;
}

}  // namespace asd::cache

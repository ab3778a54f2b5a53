#include "cache.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <mutex>
#include <random>
#include <sstream>

namespace selmer::cli {

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

void write_atomic(const std::filesystem::path& target, const std::string& content) {
    if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
    std::random_device rd;
    auto tmp = target;
    tmp += ".tmp" + std::to_string(rd());
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw std::runtime_error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) { std::filesystem::create_directories(dir_); }

std::optional<json> ResultCache::lookup(const std::string& key) const {
    std::ifstream in(dir_ / (key + ".json"));
    if (!in) return std::nullopt;
    try {
        return json::parse(in);
    } catch (const json::parse_error&) {
        return std::nullopt;  // torn or foreign file: recompute
    }
}

void ResultCache::store(const std::string& key, const json& value, const std::string& label) {
    write_atomic(dir_ / (key + ".json"), value.dump(2) + "\n");
    static std::mutex index_mutex;
    std::lock_guard lock(index_mutex);
    std::ofstream idx(dir_ / "index.tsv", std::ios::app);
    idx << key << '\t' << label << '\n';
}

}  // namespace selmer::cli

#pragma once

#include "selmer/serialize.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace selmer::cli {

std::string sha256_hex(const std::string& data);

// One JSON file per content hash plus a tab-separated index; safe to delete wholesale.
class ResultCache {
public:
    explicit ResultCache(std::filesystem::path dir);
    std::optional<json> lookup(const std::string& key) const;
    void store(const std::string& key, const json& value, const std::string& label);

private:
    std::filesystem::path dir_;
};

// Write to a sibling temporary file, then rename over the target.
void write_atomic(const std::filesystem::path& target, const std::string& content);

}  // namespace selmer::cli

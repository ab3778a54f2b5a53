#pragma once

#include "selmer/serialize.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace selmer::cli {

// Validation failure tied to a spec field.
class SpecError : public std::invalid_argument {
public:
    SpecError(std::string field, const std::string& msg)
        : std::invalid_argument("spec field '" + field + "': " + msg), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

// Plain-text experiment description: one key=value per line, '#' starts a comment.
struct ExperimentSpec {
    std::string kind;
    std::map<std::string, std::string> params;
    std::string output;

    static ExperimentSpec parse(const std::string& text);
    std::string canonical() const;  // kind and sorted params; what the cache key hashes
    json to_json() const;
};

const std::vector<std::string>& experiment_kinds();

// Fills defaults (mode, samples, seed where relevant) and checks every field.
void normalize(ExperimentSpec& spec);

struct Outcome {
    json result;
    bool exact = true;
    bool check_failed = false;
    uint64_t rejections = 0;
};

Outcome run_point(const ExperimentSpec& spec);

}  // namespace selmer::cli

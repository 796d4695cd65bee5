#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fdl/errors.hpp"

namespace fdl {

/// Flat key = value configuration. Files use one `key = value` per line with
/// `#` comments; command-line flags overlay file values. The hash is computed
/// over sorted entries, so it is independent of declaration order.
class FlatConfig {
public:
    FlatConfig() = default;
    static FlatConfig from_file(const std::filesystem::path& path);
    static FlatConfig from_string(const std::string& text);

    void set(const std::string& key, std::string value);
    bool has(const std::string& key) const;
    std::vector<std::string> keys() const;

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long get_long(const std::string& key, long fallback) const;
    uint64_t get_seed(const std::string& key, uint64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<std::string> get_list(const std::string& key, const std::vector<std::string>& fallback) const;

    /// "lo:step:hi" inclusive grid, or a comma-separated list of values.
    std::vector<double> get_grid(const std::string& key, const std::vector<double>& fallback) const;

    std::string canonical() const;
    uint64_t hash() const;

private:
    std::map<std::string, std::string> kv_;
};

/// Writes via a temporary file in the same directory plus rename.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

struct ResultRecord {
    std::string experiment;
    uint64_t config_hash = 0;
    std::string metric;
    double value = 0.0;
    std::optional<double> stderr_;
    double wall_seconds = 0.0;
    uint64_t seed = 0;
};

std::string results_json(const std::string& experiment_id, uint64_t config_hash,
                         const std::vector<ResultRecord>& records);

}  // namespace fdl

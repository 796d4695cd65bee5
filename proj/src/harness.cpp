#include "fdl/harness.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fdl/rng.hpp"

namespace fdl {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

}  // namespace

FlatConfig FlatConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return from_string(buffer.str());
}

FlatConfig FlatConfig::from_string(const std::string& text) {
    FlatConfig cfg;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config", "line " + std::to_string(lineno) + " is not key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError("config", "empty key on line " + std::to_string(lineno));
        cfg.kv_[key] = trim(line.substr(eq + 1));
    }
    return cfg;
}

void FlatConfig::set(const std::string& key, std::string value) { kv_[key] = std::move(value); }

bool FlatConfig::has(const std::string& key) const { return kv_.count(key) > 0; }

std::vector<std::string> FlatConfig::keys() const {
    std::vector<std::string> out;
    for (const auto& [k, _] : kv_) out.push_back(k);
    return out;
}

std::string FlatConfig::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

double FlatConfig::get_double(const std::string& key, double fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    try {
        size_t used = 0;
        const double v = std::stod(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key, "expected a number, got '" + it->second + "'");
    }
}

long FlatConfig::get_long(const std::string& key, long fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    try {
        size_t used = 0;
        const long v = std::stol(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key, "expected an integer, got '" + it->second + "'");
    }
}

uint64_t FlatConfig::get_seed(const std::string& key, uint64_t fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    try {
        return std::stoull(it->second);
    } catch (const std::exception&) {
        throw ConfigError(key, "expected a seed, got '" + it->second + "'");
    }
}

bool FlatConfig::get_bool(const std::string& key, bool fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    if (it->second == "true" || it->second == "1" || it->second == "yes") return true;
    if (it->second == "false" || it->second == "0" || it->second == "no") return false;
    throw ConfigError(key, "expected a boolean, got '" + it->second + "'");
}

std::vector<std::string> FlatConfig::get_list(const std::string& key,
                                              const std::vector<std::string>& fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    std::vector<std::string> out = split(it->second, ',');
    out.erase(std::remove(out.begin(), out.end(), std::string()), out.end());
    if (out.empty()) throw ConfigError(key, "empty list");
    return out;
}

std::vector<double> FlatConfig::get_grid(const std::string& key, const std::vector<double>& fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    const std::string& text = it->second;
    try {
        if (text.find(':') != std::string::npos) {
            const auto parts = split(text, ':');
            if (parts.size() != 3) throw std::invalid_argument("grid needs lo:step:hi");
            const double lo = std::stod(parts[0]), step = std::stod(parts[1]), hi = std::stod(parts[2]);
            if (!(step > 0.0) || hi < lo) throw std::invalid_argument("bad grid bounds");
            std::vector<double> out;
            for (double v = lo; v <= hi + 1e-9; v += step) out.push_back(v);
            return out;
        }
        std::vector<double> out;
        for (const std::string& item : split(text, ','))
            if (!item.empty()) out.push_back(std::stod(item));
        if (out.empty()) throw std::invalid_argument("empty grid");
        return out;
    } catch (const std::exception& e) {
        throw ConfigError(key, std::string("bad grid '") + text + "': " + e.what());
    }
}

std::string FlatConfig::canonical() const {
    std::ostringstream os;
    for (const auto& [k, v] : kv_) os << k << '=' << v << '\n';  // std::map iterates sorted
    return os.str();
}

uint64_t FlatConfig::hash() const { return fnv1a64(canonical()); }

void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string results_json(const std::string& experiment_id, uint64_t config_hash,
                         const std::vector<ResultRecord>& records) {
    nlohmann::json doc;
    doc["experiment"] = experiment_id;
    doc["config_hash"] = config_hash;
    doc["results"] = nlohmann::json::array();
    for (const ResultRecord& r : records) {
        nlohmann::json item;
        item["metric"] = r.metric;
        item["value"] = r.value;
        if (r.stderr_) item["stderr"] = *r.stderr_;
        item["wall_seconds"] = r.wall_seconds;
        item["seed"] = r.seed;
        doc["results"].push_back(item);
    }
    return doc.dump(2) + "\n";
}

}  // namespace fdl

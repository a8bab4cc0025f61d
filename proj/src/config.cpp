#include "cosparse/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <sstream>

#include "cosparse/errors.hpp"
#include "cosparse/io.hpp"
#include "cosparse/version.hpp"

namespace cosparse {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0' || errno == ERANGE) {
        throw ConfigError("config key '" + key + "': not a number: '" + value + "'");
    }
    return v;
}

}  // namespace

Config Config::parse(const std::string& text) {
    Config cfg;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string t = trim(line);
        if (t.empty()) continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected 'key = value', got '" + t + "'");
        }
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        }
        if (cfg.kv_.count(key)) {
            throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" +
                              key + "'");
        }
        cfg.kv_[key] = value;
    }
    return cfg;
}

Config Config::load(const std::string& path) {
    return parse(read_file(path));
}

std::string Config::get_str(const std::string& key, const std::string& fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : parse_double(key, it->second);
}

int Config::get_int(const std::string& key, int fallback) const {
    double v = get_double(key, static_cast<double>(fallback));
    int iv = static_cast<int>(v);
    if (static_cast<double>(iv) != v) {
        throw ConfigError("config key '" + key + "': expected an integer");
    }
    return iv;
}

uint64_t Config::get_u64(const std::string& key, uint64_t fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    errno = 0;
    char* end = nullptr;
    unsigned long long v = std::strtoull(it->second.c_str(), &end, 10);
    if (end == it->second.c_str() || *end != '\0' || errno == ERANGE) {
        throw ConfigError("config key '" + key + "': not an unsigned integer: '" +
                          it->second + "'");
    }
    return static_cast<uint64_t>(v);
}

std::vector<std::string> Config::get_list(const std::string& key,
                                          const std::string& fallback) const {
    std::string raw = get_str(key, fallback);
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(raw);
    while (std::getline(is, item, ',')) {
        std::string t = trim(item);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

std::vector<double> Config::get_double_list(const std::string& key,
                                            const std::string& fallback) const {
    std::vector<double> out;
    for (const auto& item : get_list(key, fallback)) {
        out.push_back(parse_double(key, item));
    }
    return out;
}

void Config::require_known(const std::set<std::string>& allowed) const {
    std::string bad;
    for (const auto& [key, value] : kv_) {
        (void)value;
        if (!allowed.count(key)) {
            if (!bad.empty()) bad += ", ";
            bad += "'" + key + "'";
        }
    }
    if (!bad.empty()) {
        throw ConfigError("unknown config keys: " + bad);
    }
}

std::string Config::resolved_text() const {
    std::ostringstream os;
    os << "version = " << kVersion << '\n';
    for (const auto& [key, value] : kv_) {
        os << key << " = " << value << '\n';
    }
    return os.str();
}

}  // namespace cosparse

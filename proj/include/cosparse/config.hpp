#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace cosparse {

// Flat `key = value` config. `#` starts a comment, blank lines are skipped,
// duplicate or unknown keys are hard errors (validated against the
// subcommand's whitelist before use).
class Config {
  public:
    static Config parse(const std::string& text);
    static Config load(const std::string& path);

    bool has(const std::string& key) const { return kv_.count(key) != 0; }
    void set(const std::string& key, const std::string& value) { kv_[key] = value; }

    std::string get_str(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    uint64_t get_u64(const std::string& key, uint64_t fallback) const;
    std::vector<std::string> get_list(const std::string& key,
                                      const std::string& fallback) const;
    std::vector<double> get_double_list(const std::string& key,
                                        const std::string& fallback) const;

    // Throws ConfigError naming every key not in `allowed`.
    void require_known(const std::set<std::string>& allowed) const;

    // Canonical dump: version line plus sorted key = value lines, so two runs
    // with the same inputs write identical resolved configs.
    std::string resolved_text() const;

  private:
    std::map<std::string, std::string> kv_;
};

}  // namespace cosparse

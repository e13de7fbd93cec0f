#pragma once

// CLI entry points: config parsing, the five subcommands, exit-code contract
// (0 success, 1 verdict/tolerance failure, 2 input error).

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace kcontour {

struct RunConfig {
    std::string command;
    std::map<std::string, std::string> kv;

    bool has(const std::string& key) const { return kv.count(key) != 0; }
    std::string get(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
};

/// Parse `<command> [--config FILE] [--key value | key=value ...]`.
/// Config-file keys are applied first; command-line keys override them.
/// Throws ConfigError on unknown keys or malformed values.
RunConfig parse_args(const std::vector<std::string>& args);

/// Flat key-value config document: one `key = value` per line, '#' comments.
std::map<std::string, std::string> parse_config_file(const std::string& text);

/// Dispatch a parsed config. Writes the report to `out`; returns the exit code.
int run(const RunConfig& config, std::ostream& out);

std::string help_text();

} // namespace kcontour

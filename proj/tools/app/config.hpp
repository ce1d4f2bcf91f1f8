#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace landau::app {

// Flat "section.key" -> value view of an INI experiment config. Every key must be listed in
// the schema (schema/config_schema.md); values are parsed on access.
class Config {
public:
    static Config load(const std::filesystem::path& path);
    static Config parse(const std::string& text, const std::string& origin = "<string>");

    // "section.key=value"
    void set(const std::string& assignment);
    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    std::string str(const std::string& key, const std::string& def) const;
    double num(const std::string& key, double def) const;
    long integer(const std::string& key, long def) const;
    bool flag(const std::string& key, bool def) const;
    // comma- or whitespace-separated numbers
    std::vector<double> list(const std::string& key, std::vector<double> def) const;
    // comma- or semicolon-separated items, each split at ':'
    std::vector<std::vector<std::string>> records(const std::string& key) const;

    // INI text with sorted sections and keys; parse(ini()) reproduces the config.
    std::string ini(bool with_output = true) const;
    // FNV-1a 64 of the INI text without the [output] section, 16 hex digits: where the
    // artifacts go does not change what they contain.
    std::string hash() const;

    const std::map<std::string, std::string>& entries() const { return kv_; }

private:
    std::map<std::string, std::string> kv_;
};

// Every key the runner understands.
const std::vector<std::string>& known_keys();

std::uint64_t fnv1a64(const std::string& s);

// Whole-string decimal number; ConfigError naming `context` otherwise.
double parse_number(const std::string& context, const std::string& text);

} // namespace landau::app

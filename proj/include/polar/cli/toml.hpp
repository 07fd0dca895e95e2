#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace polar::cli {

// Minimal TOML reader covering what run configs need: [table] and
// [dotted.table] headers, string / integer / float / boolean values, dotted
// keys and # comments. Keys are flattened to "table.key" form.
struct TomlValue {
    enum class Kind { String, Integer, Float, Boolean } kind = Kind::String;
    std::string str;
    std::int64_t integer = 0;
    double number = 0.0;
    bool boolean = false;
};

class TomlTable {
public:
    static TomlTable parse(const std::string& text);
    static TomlTable parse_file(const std::string& path);

    bool contains(const std::string& key) const { return values_.count(key) > 0; }

    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    double get_double(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    const std::map<std::string, TomlValue>& values() const { return values_; }

private:
    std::map<std::string, TomlValue> values_;
};

} // namespace polar::cli

#include "polar/cli/toml.hpp"

#include "polar/core/comments_io.hpp"
#include "polar/core/errors.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace polar::cli {

namespace {

bool valid_bare_key(const std::string& key) {
    if (key.empty()) return false;
    for (char c : key)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' && c != '.')
            return false;
    return true;
}

std::string parse_basic_string(const std::string& raw, std::size_t lineno) {
    // raw includes the surrounding quotes
    std::string out;
    for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
        char c = raw[i];
        if (c != '\\') {
            out.push_back(c);
            continue;
        }
        if (i + 2 >= raw.size() + 1)
            throw ConfigError("line " + std::to_string(lineno) + ": dangling escape");
        ++i;
        switch (raw[i]) {
            case 'n': out.push_back('\n'); break;
            case 't': out.push_back('\t'); break;
            case 'r': out.push_back('\r'); break;
            case '"': out.push_back('"'); break;
            case '\\': out.push_back('\\'); break;
            default:
                throw ConfigError("line " + std::to_string(lineno) + ": unsupported escape '\\" +
                                  raw[i] + "'");
        }
    }
    return out;
}

// cuts a # comment that is not inside a quoted string
std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (c == '"' && (i == 0 || line[i - 1] != '\\')) in_string = !in_string;
        if (c == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

} // namespace

TomlTable TomlTable::parse(const std::string& text) {
    TomlTable table;
    std::istringstream in(text);
    std::string line;
    std::string prefix;
    std::size_t lineno = 0;

    while (std::getline(in, line)) {
        ++lineno;
        line = core::trim(strip_comment(line));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": unterminated table header");
            prefix = core::trim(line.substr(1, line.size() - 2));
            if (!valid_bare_key(prefix))
                throw ConfigError("line " + std::to_string(lineno) + ": bad table name '" +
                                  prefix + "'");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = core::trim(line.substr(0, eq));
        std::string value = core::trim(line.substr(eq + 1));
        if (!valid_bare_key(key))
            throw ConfigError("line " + std::to_string(lineno) + ": bad key '" + key + "'");
        if (value.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": missing value");
        const std::string full_key = prefix.empty() ? key : prefix + "." + key;

        TomlValue v;
        if (value.front() == '"') {
            if (value.size() < 2 || value.back() != '"')
                throw ConfigError("line " + std::to_string(lineno) + ": unterminated string");
            v.kind = TomlValue::Kind::String;
            v.str = parse_basic_string(value, lineno);
        } else if (value == "true" || value == "false") {
            v.kind = TomlValue::Kind::Boolean;
            v.boolean = value == "true";
        } else {
            // numeric: integer unless it carries a '.', 'e' or 'E'
            const bool is_float = value.find_first_of(".eE") != std::string::npos;
            try {
                std::size_t consumed = 0;
                if (is_float) {
                    v.kind = TomlValue::Kind::Float;
                    v.number = std::stod(value, &consumed);
                } else {
                    v.kind = TomlValue::Kind::Integer;
                    v.integer = std::stoll(value, &consumed);
                }
                if (consumed != value.size()) throw std::invalid_argument("trailing characters");
            } catch (const std::exception&) {
                throw ConfigError("line " + std::to_string(lineno) + ": cannot parse value '" +
                                  value + "'");
            }
        }
        table.values_[full_key] = std::move(v);
    }
    return table;
}

TomlTable TomlTable::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string TomlTable::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second.kind != TomlValue::Kind::String)
        throw ConfigError("config key '" + key + "' must be a string");
    return it->second.str;
}

std::int64_t TomlTable::get_int(const std::string& key, std::int64_t fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second.kind != TomlValue::Kind::Integer)
        throw ConfigError("config key '" + key + "' must be an integer");
    return it->second.integer;
}

double TomlTable::get_double(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second.kind == TomlValue::Kind::Integer)
        return static_cast<double>(it->second.integer);
    if (it->second.kind != TomlValue::Kind::Float)
        throw ConfigError("config key '" + key + "' must be a number");
    return it->second.number;
}

bool TomlTable::get_bool(const std::string& key, bool fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second.kind != TomlValue::Kind::Boolean)
        throw ConfigError("config key '" + key + "' must be true or false");
    return it->second.boolean;
}

} // namespace polar::cli

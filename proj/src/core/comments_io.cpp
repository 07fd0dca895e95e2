#include "polar/core/comments_io.hpp"

#include "polar/core/errors.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

using nlohmann::json;

namespace polar::core {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

namespace {

Comment parse_comment_line(const std::string& line) {
    json obj = json::parse(line); // throws json::parse_error
    if (!obj.is_object()) throw FormatError("line is not a JSON object");

    const auto need = [&](const char* field) -> const json& {
        auto it = obj.find(field);
        if (it == obj.end()) throw FormatError(std::string("missing field '") + field + "'");
        return *it;
    };

    Comment c;
    c.id = need("id").get<std::string>();
    c.text = need("text").get<std::string>();
    if (trim(c.text).empty()) throw FormatError("comment text is empty after trimming");
    c.author = need("author").get<std::string>();
    const auto& likes = need("likes");
    if (!likes.is_number_integer() || likes.get<std::int64_t>() < 0)
        throw FormatError("'likes' must be a non-negative integer");
    c.likes = likes.get<std::int64_t>();
    c.timestamp = parse_rfc3339(need("timestamp").get<std::string>());
    c.topic = need("topic").get<std::string>();
    return c;
}

} // namespace

IngestResult read_comments_jsonl(std::istream& in, bool strict) {
    IngestResult result;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        try {
            result.comments.push_back(parse_comment_line(line));
        } catch (const std::exception& e) {
            if (strict)
                throw FormatError("line " + std::to_string(lineno) + ": " + e.what());
            result.issues.push_back({lineno, e.what()});
        }
    }
    return result;
}

IngestResult read_comments_file(const std::string& path, bool strict) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open comments file '" + path + "'");
    return read_comments_jsonl(in, strict);
}

void write_comments_jsonl(std::ostream& out, const std::vector<Comment>& comments) {
    for (const auto& c : comments) {
        json obj{{"id", c.id},
                 {"text", c.text},
                 {"author", c.author},
                 {"likes", c.likes},
                 {"timestamp", format_rfc3339(c.timestamp)},
                 {"topic", c.topic}};
        out << obj.dump() << '\n';
    }
}

} // namespace polar::core

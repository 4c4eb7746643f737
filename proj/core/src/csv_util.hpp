#pragma once

// Minimal CSV reading for the comma-separated tables the tools exchange:
// no embedded commas or newlines inside fields; surrounding quotes and
// whitespace are stripped.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lvef::csv {

inline std::string trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return std::string(s);
}

inline std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

struct Row {
    std::size_t line = 0;  // 1-based
    std::vector<std::string> fields;
};

inline std::vector<Row> split_rows(std::string_view text) {
    std::vector<Row> rows;
    std::size_t line = 0;
    while (!text.empty()) {
        ++line;
        const std::size_t nl = text.find('\n');
        std::string_view raw = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        if (trim(raw).empty()) continue;
        Row row{line, {}};
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = raw.find(',', start);
            row.fields.push_back(trim(raw.substr(start, comma == std::string_view::npos ? raw.npos : comma - start)));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Index of the first header column whose lower-cased name is in `names`.
inline std::optional<std::size_t> column(const Row& header, std::initializer_list<std::string_view> names) {
    for (std::size_t i = 0; i < header.fields.size(); ++i) {
        const std::string h = lower(header.fields[i]);
        for (auto n : names) {
            if (h == n) return i;
        }
    }
    return std::nullopt;
}

inline std::optional<double> to_double(const std::string& s) {
    double v = 0.0;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    return v;
}

inline std::optional<long long> to_int(const std::string& s) {
    long long v = 0;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    return v;
}

}  // namespace lvef::csv

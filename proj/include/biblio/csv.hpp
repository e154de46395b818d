#pragma once

// Minimal RFC 4180 reader/writer: quoted fields, doubled quotes, embedded
// newlines, CRLF or LF line endings.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace biblio::csv {

struct Row {
    std::size_t line = 0;  // 1-based line where the row starts
    std::vector<std::string> fields;

    bool blank() const { return fields.size() == 1 && fields[0].empty(); }
};

inline std::vector<Row> parse(std::string_view data) {
    std::vector<Row> rows;
    std::size_t line = 1;
    std::size_t i = 0;
    if (data.substr(0, 3) == "\xEF\xBB\xBF") i = 3;  // BOM

    while (i < data.size()) {
        Row row;
        row.line = line;
        std::string field;
        bool in_quotes = false;
        bool done = false;
        while (i < data.size() && !done) {
            const char c = data[i];
            if (in_quotes) {
                if (c == '"') {
                    if (i + 1 < data.size() && data[i + 1] == '"') {
                        field += '"';
                        ++i;
                    } else {
                        in_quotes = false;
                    }
                } else {
                    if (c == '\n') ++line;
                    field += c;
                }
                ++i;
                continue;
            }
            switch (c) {
            case '"': in_quotes = true; break;
            case ',':
                row.fields.push_back(std::move(field));
                field.clear();
                break;
            case '\r':
                if (i + 1 < data.size() && data[i + 1] == '\n') ++i;
                [[fallthrough]];
            case '\n':
                ++line;
                done = true;
                break;
            default: field += c;
            }
            ++i;
        }
        row.fields.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string format_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += escape(fields[i]);
    }
    out += '\n';
    return out;
}

}  // namespace biblio::csv

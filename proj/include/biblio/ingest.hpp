#pragma once

// Ranking CSV and corpus fixture loading.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "biblio/csv.hpp"
#include "biblio/error.hpp"
#include "biblio/model.hpp"
#include "biblio/text.hpp"

namespace biblio {

/// Header names of the three ranking columns. Matched case-insensitively.
struct RankColumns {
    std::string rank = "Rank";
    std::string title = "Full Journal Title";
    std::string jif = "Journal Impact Factor";
};

struct RankParseResult {
    std::vector<JournalRecord> records;  // file order
    std::vector<std::string> warnings;
};

struct CorpusLoadResult {
    std::vector<DocumentRecord> documents;
    std::size_t duplicates_removed = 0;
    std::vector<std::string> warnings;
};

inline std::string read_file(const std::filesystem::path& path, std::string_view what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + std::string(what) + " '" + path.string() + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Parses ranking CSV content. All-or-nothing: every invalid line is collected
/// into a single ParseError.
inline RankParseResult parse_rank_csv_text(std::string content, const std::string& source_name,
                                           const RankColumns& columns = {}) {
    RankParseResult result;
    bool latin1 = false;
    content = text::decode_input(std::move(content), latin1);
    if (latin1) result.warnings.push_back(source_name + ": not valid UTF-8, decoded as Latin-1");

    auto rows = csv::parse(content);
    std::erase_if(rows, [](const csv::Row& r) { return r.blank(); });
    if (rows.empty()) throw ParseError(source_name, {{1, "missing header row"}});

    const auto& header = rows.front();
    const auto find_column = [&](const std::string& name) -> std::ptrdiff_t {
        for (std::size_t i = 0; i < header.fields.size(); ++i) {
            if (text::iequals(text::trim(header.fields[i]), text::trim(name))) return static_cast<std::ptrdiff_t>(i);
        }
        return -1;
    };
    const auto rank_col = find_column(columns.rank);
    const auto title_col = find_column(columns.title);
    const auto jif_col = find_column(columns.jif);
    {
        std::vector<LineError> missing;
        if (rank_col < 0) missing.push_back({header.line, "missing required column '" + columns.rank + "'"});
        if (title_col < 0) missing.push_back({header.line, "missing required column '" + columns.title + "'"});
        if (jif_col < 0) missing.push_back({header.line, "missing required column '" + columns.jif + "'"});
        if (!missing.empty()) throw ParseError(source_name, std::move(missing));
    }
    const auto needed = static_cast<std::size_t>(std::max({rank_col, title_col, jif_col})) + 1;

    std::vector<LineError> errors;
    std::set<int> seen_ranks;
    for (auto it = rows.begin() + 1; it != rows.end(); ++it) {
        const auto& row = *it;
        if (row.fields.size() < needed) {
            errors.push_back({row.line, "expected at least " + std::to_string(needed) + " fields, got " +
                                            std::to_string(row.fields.size())});
            continue;
        }
        std::vector<std::string> problems;
        const auto& rank_field = row.fields[static_cast<std::size_t>(rank_col)];
        const auto& jif_field = row.fields[static_cast<std::size_t>(jif_col)];
        const auto rank = text::parse_int<int>(rank_field);
        const auto jif = text::parse_double(jif_field);
        const std::string title(text::trim(row.fields[static_cast<std::size_t>(title_col)]));

        if (!rank) {
            problems.push_back("unparseable rank '" + rank_field + "'");
        } else if (*rank < 1) {
            problems.push_back("rank must be >= 1, got " + std::to_string(*rank));
        } else if (!seen_ranks.insert(*rank).second) {
            problems.push_back("duplicate rank " + std::to_string(*rank));
        }
        if (!jif) {
            problems.push_back("unparseable JIF '" + jif_field + "'");
        } else if (*jif < 0 || !std::isfinite(*jif)) {
            problems.push_back("JIF must be non-negative, got '" + jif_field + "'");
        }
        if (title.empty()) problems.push_back("empty journal title");

        if (!problems.empty()) {
            errors.push_back({row.line, text::join(problems, "; ")});
            continue;
        }
        result.records.push_back({*rank, title, *jif});
    }
    if (!errors.empty()) throw ParseError(source_name, std::move(errors));

    auto by_rank = result.records;
    std::sort(by_rank.begin(), by_rank.end(), [](const auto& a, const auto& b) { return a.rank < b.rank; });
    for (std::size_t i = 1; i < by_rank.size(); ++i) {
        if (by_rank[i].jif > by_rank[i - 1].jif) {
            result.warnings.push_back(source_name + ": JIF increases from rank " + std::to_string(by_rank[i - 1].rank) +
                                      " to rank " + std::to_string(by_rank[i].rank));
        }
    }
    return result;
}

inline RankParseResult parse_rank_csv(const std::filesystem::path& path, const RankColumns& columns = {}) {
    return parse_rank_csv_text(read_file(path, "ranking file"), path.string(), columns);
}

// ---------------------------------------------------------------------------
// Corpus fixture: one JSON object per line with exactly the six fields below.

namespace detail {

inline constexpr std::string_view kCorpusFields[] = {"source_title", "year",     "keywords",
                                                     "subject_areas", "authors", "countries"};

inline std::vector<std::string> string_array(const nlohmann::json& j, std::string_view field, std::size_t index) {
    if (!j.is_array()) throw SchemaError(index, "field '" + std::string(field) + "' must be an array of strings");
    std::vector<std::string> out;
    out.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_string()) throw SchemaError(index, "field '" + std::string(field) + "' must be an array of strings");
        auto s = std::string(text::trim(e.get_ref<const std::string&>()));
        if (s.empty()) throw SchemaError(index, "empty string in '" + std::string(field) + "'");
        if (s.find_first_of("\t\r\n") != std::string::npos) {
            throw SchemaError(index, "control character in '" + std::string(field) + "'");
        }
        out.push_back(std::move(s));
    }
    return out;
}

inline std::size_t dedupe_case_insensitive(std::vector<std::string>& values) {
    std::unordered_set<std::string> seen;
    const auto before = values.size();
    std::erase_if(values, [&](const std::string& v) { return !seen.insert(text::lower(v)).second; });
    return before - values.size();
}

}  // namespace detail

/// Validates one parsed JSON object against the fixture schema.
inline DocumentRecord document_from_json(const nlohmann::json& j, std::size_t index) {
    if (!j.is_object()) throw SchemaError(index, "record is not an object");
    for (const auto& [key, value] : j.items()) {
        if (std::find(std::begin(detail::kCorpusFields), std::end(detail::kCorpusFields), key) ==
            std::end(detail::kCorpusFields)) {
            throw SchemaError(index, "unknown field '" + key + "'");
        }
    }
    for (const auto field : detail::kCorpusFields) {
        if (!j.contains(field)) throw SchemaError(index, "missing field '" + std::string(field) + "'");
    }

    DocumentRecord doc;
    const auto& title = j.at("source_title");
    if (!title.is_string() || text::trim(title.get_ref<const std::string&>()).empty()) {
        throw SchemaError(index, "source_title must be a non-empty string");
    }
    doc.source_title = std::string(text::trim(title.get_ref<const std::string&>()));

    const auto& year = j.at("year");
    if (!year.is_number_integer()) throw SchemaError(index, "year must be an integer");
    const auto y = year.get<long long>();
    if (y < 1900 || y > 2100) throw SchemaError(index, "year " + std::to_string(y) + " outside [1900, 2100]");
    doc.year = static_cast<int>(y);

    if (j.at("keywords").is_null()) {
        doc.keywords_available = false;
    } else {
        doc.keywords = detail::string_array(j.at("keywords"), "keywords", index);
    }
    doc.subject_areas = detail::string_array(j.at("subject_areas"), "subject_areas", index);
    if (doc.subject_areas.empty()) throw SchemaError(index, "subject_areas must not be empty");
    doc.authors = detail::string_array(j.at("authors"), "authors", index);
    doc.countries = detail::string_array(j.at("countries"), "countries", index);

    detail::dedupe_case_insensitive(doc.keywords);
    detail::dedupe_case_insensitive(doc.subject_areas);
    return doc;
}

inline nlohmann::ordered_json document_to_json(const DocumentRecord& doc) {
    nlohmann::ordered_json j;
    j["source_title"] = doc.source_title;
    j["year"] = doc.year;
    j["keywords"] = doc.keywords_available ? nlohmann::ordered_json(doc.keywords) : nlohmann::ordered_json(nullptr);
    j["subject_areas"] = doc.subject_areas;
    j["authors"] = doc.authors;
    j["countries"] = doc.countries;
    return j;
}

inline std::string document_to_line(const DocumentRecord& doc) { return document_to_json(doc).dump(); }

inline CorpusLoadResult parse_corpus_text(std::string content, const std::string& source_name) {
    CorpusLoadResult result;
    bool latin1 = false;
    content = text::decode_input(std::move(content), latin1);
    if (latin1) result.warnings.push_back(source_name + ": not valid UTF-8, decoded as Latin-1");

    std::unordered_set<std::string> seen;
    std::size_t index = 0;
    std::istringstream lines(content);
    for (std::string line; std::getline(lines, line);) {
        if (text::trim(line).empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw SchemaError(index, std::string("invalid JSON: ") + e.what());
        }
        auto doc = document_from_json(j, index);
        ++index;
        if (!seen.insert(document_to_line(doc)).second) {
            ++result.duplicates_removed;
            continue;
        }
        result.documents.push_back(std::move(doc));
    }
    if (result.documents.empty()) result.warnings.push_back(source_name + ": corpus is empty");
    if (result.duplicates_removed > 0) {
        result.warnings.push_back(source_name + ": removed " + std::to_string(result.duplicates_removed) +
                                  " duplicate record(s)");
    }
    return result;
}

inline CorpusLoadResult load_corpus(const std::filesystem::path& path) {
    return parse_corpus_text(read_file(path, "corpus file"), path.string());
}

inline void write_corpus(const std::filesystem::path& path, const std::vector<DocumentRecord>& docs) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write corpus file '" + path.string() + "'");
    for (const auto& d : docs) out << document_to_line(d) << '\n';
}

}  // namespace biblio

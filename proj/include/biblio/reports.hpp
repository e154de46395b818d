#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "biblio/corpus.hpp"
#include "biblio/csv.hpp"
#include "biblio/error.hpp"
#include "biblio/model.hpp"
#include "biblio/text.hpp"

namespace biblio {

using RankedCounts = std::vector<std::pair<std::string, std::uint64_t>>;

struct ReportBundle {
    std::map<int, std::uint64_t> per_year;
    RankedCounts per_country;   // descending count, ties alphabetical
    RankedCounts per_author;    // same order
    RankedCounts top_keywords;  // same order
    /// Sorted subject-area set of a document ("A; B") -> documents.
    std::map<std::string, std::uint64_t> area_overlap;

    friend bool operator==(const ReportBundle&, const ReportBundle&) = default;
};

struct AreaOverlap {
    std::uint64_t both = 0;
    std::uint64_t only_a = 0;
    std::uint64_t only_b = 0;

    friend bool operator==(const AreaOverlap&, const AreaOverlap&) = default;
};

/// Documents of the given journals, inside `window`, listing `keyword` and
/// indexed in `subject_area`. Journals are matched on normalized title.
inline std::vector<DocumentRecord> select_final_set(const Corpus& corpus, std::span<const std::string> journal_titles,
                                                    std::string_view keyword, std::string_view subject_area,
                                                    const YearWindow& window) {
    window.validate();
    if (journal_titles.empty()) throw PreconditionError("no journals to select from");
    std::set<std::size_t> picked;
    std::vector<DocumentRecord> out;
    for (const auto& title : journal_titles) {
        for (const auto i : corpus.by_name(normalize_title(title))) {
            const auto& d = corpus[i];
            if (window.contains(d.year) && has_keyword(d, keyword) && has_area(d, subject_area) &&
                picked.insert(i).second) {
                out.push_back(d);
            }
        }
    }
    return out;
}

namespace detail {

inline RankedCounts ranked(const std::map<std::string, std::uint64_t>& counts) {
    RankedCounts out(counts.begin(), counts.end());
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    return out;
}

inline std::string area_combination(std::vector<std::string> areas) {
    std::sort(areas.begin(), areas.end());
    return text::join(areas, "; ");
}

}  // namespace detail

/// Per-year, per-country, per-author, keyword and area-combination tallies.
/// A document listing several countries (or authors) counts once for each.
inline ReportBundle build_reports(std::span<const DocumentRecord> docs) {
    ReportBundle b;
    std::map<std::string, std::uint64_t> countries, authors, keywords;
    for (const auto& d : docs) {
        ++b.per_year[d.year];
        for (const auto& c : std::set<std::string>(d.countries.begin(), d.countries.end())) ++countries[c];
        for (const auto& a : std::set<std::string>(d.authors.begin(), d.authors.end())) ++authors[a];
        for (const auto& k : std::set<std::string>(d.keywords.begin(), d.keywords.end())) ++keywords[k];
        ++b.area_overlap[detail::area_combination(d.subject_areas)];
    }
    b.per_country = detail::ranked(countries);
    b.per_author = detail::ranked(authors);
    b.top_keywords = detail::ranked(keywords);
    return b;
}

inline AreaOverlap area_overlap(std::span<const DocumentRecord> docs, std::string_view area_a, std::string_view area_b) {
    AreaOverlap o;
    for (const auto& d : docs) {
        const bool a = has_area(d, area_a), b = has_area(d, area_b);
        if (a && b) ++o.both;
        else if (a) ++o.only_a;
        else if (b) ++o.only_b;
    }
    return o;
}

// ---------------------------------------------------------------------------
// Export

inline constexpr const char* kReportFiles[] = {"report_per_year.csv", "report_per_country.csv",
                                               "report_per_author.csv", "report_top_keywords.csv",
                                               "report_area_overlap.csv"};
inline constexpr const char* kReportBundleFile = "report_bundle.jsonl";

namespace detail {

inline std::string counts_csv(const char* key_column, const RankedCounts& rows) {
    std::string out = csv::format_row({key_column, "count"});
    for (const auto& [k, n] : rows) out += csv::format_row({k, std::to_string(n)});
    return out;
}

inline void write_text(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    out << content;
}

}  // namespace detail

inline std::string format_report_bundle(const ReportBundle& b) {
    std::string out;
    const auto line = [&](const char* report, const std::string& key, std::uint64_t count) {
        nlohmann::ordered_json j;
        j["report"] = report;
        j["key"] = key;
        j["count"] = count;
        out += j.dump() + '\n';
    };
    for (const auto& [y, n] : b.per_year) line("per_year", std::to_string(y), n);
    for (const auto& [k, n] : b.per_country) line("per_country", k, n);
    for (const auto& [k, n] : b.per_author) line("per_author", k, n);
    for (const auto& [k, n] : b.top_keywords) line("top_keywords", k, n);
    for (const auto& [k, n] : b.area_overlap) line("area_overlap", k, n);
    return out;
}

/// Writes the five report CSVs plus the line-delimited bundle into `dir`.
inline void write_reports(const std::filesystem::path& dir, const ReportBundle& b) {
    RankedCounts years;
    for (const auto& [y, n] : b.per_year) years.emplace_back(std::to_string(y), n);
    RankedCounts combos(b.area_overlap.begin(), b.area_overlap.end());

    detail::write_text(dir / kReportFiles[0], detail::counts_csv("year", years));
    detail::write_text(dir / kReportFiles[1], detail::counts_csv("country", b.per_country));
    detail::write_text(dir / kReportFiles[2], detail::counts_csv("author", b.per_author));
    detail::write_text(dir / kReportFiles[3], detail::counts_csv("keyword", b.top_keywords));
    detail::write_text(dir / kReportFiles[4], detail::counts_csv("combination", combos));
    detail::write_text(dir / kReportBundleFile, format_report_bundle(b));
}

}  // namespace biblio

#pragma once

// Per-journal post-filter metrics: document counts, subject-area share,
// share cutoff, top-K selection by impact factor and keyword counts.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "biblio/corpus.hpp"
#include "biblio/csv.hpp"
#include "biblio/ingest.hpp"
#include "biblio/model.hpp"
#include "biblio/search.hpp"
#include "biblio/text.hpp"

namespace biblio {

struct JournalMetrics {
    JournalRecord journal;
    std::uint64_t total_docs = 0;
    std::uint64_t ss_docs = 0;
    SubjectAreaHistogram area_histogram;
    double ss_relative_index = 0.0;
    /// nullopt when the portal has no keyword data for the journal.
    std::optional<std::uint64_t> keyword_occurrences;
};

struct MetricsOptions {
    int year_floor = 2005;
    std::string target_area = kSocialSciences;
    std::string keyword = "Climate Change";
    YearWindow keyword_window{2006, 2018};
};

/// Indexations in `area` over indexations in all areas; 0 for an empty
/// histogram.
inline double ss_relative_index(const SubjectAreaHistogram& h, std::string_view area = kSocialSciences) {
    std::uint64_t total = 0, target = 0;
    for (const auto& [name, count] : h) {
        total += count;
        if (text::iequals(name, area)) target += count;
    }
    return total == 0 ? 0.0 : static_cast<double>(target) / static_cast<double>(total);
}

inline std::size_t count_keyword_docs(std::span<const DocumentRecord* const> journal_docs, std::string_view keyword,
                                      const YearWindow& window) {
    window.validate();
    return static_cast<std::size_t>(std::count_if(journal_docs.begin(), journal_docs.end(), [&](const auto* d) {
        return window.contains(d->year) && has_keyword(*d, keyword);
    }));
}

/// Documents of `journal_title` inside `window` listing `keyword`
/// (whole keyword, case-insensitive).
inline std::size_t count_keyword_docs(const Corpus& corpus, std::string_view journal_title, std::string_view keyword,
                                      const YearWindow& window) {
    window.validate();
    const auto docs = journal_documents(corpus, journal_title);
    return count_keyword_docs(docs, keyword, window);
}

/// Portal documents of the journal behind a search outcome: the verbatim
/// matched title when the cascade pinned one, the normalized journal title
/// otherwise.
inline std::vector<const DocumentRecord*> outcome_documents(const Corpus& corpus, const SearchOutcome& outcome) {
    if (outcome.matched_source_title) {
        std::vector<const DocumentRecord*> out;
        for (const auto i : corpus.by_verbatim_title(*outcome.matched_source_title)) out.push_back(&corpus[i]);
        return out;
    }
    return journal_documents(corpus, outcome.journal.title);
}

inline JournalMetrics compute_journal_metrics(const JournalRecord& journal,
                                              std::span<const DocumentRecord* const> journal_docs,
                                              const MetricsOptions& options = {}) {
    options.keyword_window.validate();
    JournalMetrics m;
    m.journal = journal;
    bool any_in_window = false, any_keyword_data = false;
    for (const auto* d : journal_docs) {
        if (d->year > options.year_floor) {
            ++m.total_docs;
            if (has_area(*d, options.target_area)) ++m.ss_docs;
            for (const auto& a : d->subject_areas) ++m.area_histogram[a];
        }
        if (options.keyword_window.contains(d->year)) {
            any_in_window = true;
            any_keyword_data = any_keyword_data || d->keywords_available;
        }
    }
    m.ss_relative_index = ss_relative_index(m.area_histogram, options.target_area);
    if (!any_in_window || any_keyword_data) {
        m.keyword_occurrences = count_keyword_docs(journal_docs, options.keyword, options.keyword_window);
    }
    return m;
}

/// Keeps journals with ss_docs / total_docs >= cutoff. Journals without
/// documents are dropped with a warning.
inline std::vector<JournalMetrics> one_percent_cutoff(std::span<const JournalMetrics> candidates, double cutoff = 0.01,
                                                      std::vector<std::string>* warnings = nullptr) {
    std::vector<JournalMetrics> out;
    for (const auto& m : candidates) {
        if (m.total_docs == 0) {
            if (warnings) warnings->push_back(m.journal.title + ": no documents, share undefined; excluded");
            continue;
        }
        if (static_cast<double>(m.ss_docs) / static_cast<double>(m.total_docs) >= cutoff) out.push_back(m);
    }
    return out;
}

/// The k highest impact factors, descending; equal JIFs keep rank order.
inline std::vector<JournalMetrics> top_k_by_jif(std::span<const JournalMetrics> retained, std::size_t k = 15) {
    std::vector<JournalMetrics> out(retained.begin(), retained.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.journal.jif != b.journal.jif) return a.journal.jif > b.journal.jif;
        return a.journal.rank < b.journal.rank;
    });
    if (out.size() > k) out.resize(k);
    return out;
}

// ---------------------------------------------------------------------------
// Metrics table CSV

inline std::vector<std::string> metrics_columns(std::string_view keyword) {
    return {"Rank",
            "Journal Title",
            "JIF",
            "Papers Number",
            "SS Papers Number",
            "SS Relative Index",
            "Occurrence of \"" + std::string(keyword) + "\""};
}

inline std::string format_percent(double fraction) { return text::format_fixed(fraction * 100.0, 2) + "%"; }

inline std::string format_metrics_table(std::span<const JournalMetrics> rows, std::string_view keyword) {
    std::string out = csv::format_row(metrics_columns(keyword));
    for (const auto& m : rows) {
        out += csv::format_row({std::to_string(m.journal.rank), m.journal.title, text::format_fixed(m.journal.jif, 3),
                                std::to_string(m.total_docs), std::to_string(m.ss_docs),
                                format_percent(m.ss_relative_index),
                                m.keyword_occurrences ? std::to_string(*m.keyword_occurrences) : "Null"});
    }
    return out;
}

/// One parsed metrics table row; the histogram is not part of the table.
struct MetricsRow {
    JournalRecord journal;
    std::uint64_t total_docs = 0;
    std::uint64_t ss_docs = 0;
    double ss_relative_percent = 0.0;
    std::optional<std::uint64_t> keyword_occurrences;
};

inline std::vector<MetricsRow> parse_metrics_table(std::string_view content, const std::string& source_name) {
    auto rows = csv::parse(content);
    std::erase_if(rows, [](const csv::Row& r) { return r.blank(); });
    if (rows.empty() || rows.front().fields.size() != 7 || rows.front().fields[0] != "Rank") {
        throw ParseError(source_name, {{1, "missing metrics table header"}});
    }
    std::vector<MetricsRow> out;
    std::vector<LineError> errors;
    for (auto it = rows.begin() + 1; it != rows.end(); ++it) {
        const auto& f = it->fields;
        if (f.size() != 7) {
            errors.push_back({it->line, "expected 7 fields"});
            continue;
        }
        const auto rank = text::parse_int<int>(f[0]);
        const auto jif = text::parse_double(f[2]);
        const auto total = text::parse_int<std::uint64_t>(f[3]);
        const auto ss = text::parse_int<std::uint64_t>(f[4]);
        auto pct_field = std::string(text::trim(f[5]));
        if (!pct_field.empty() && pct_field.back() == '%') pct_field.pop_back();
        const auto pct = text::parse_double(pct_field);
        std::optional<std::uint64_t> occ;
        bool occ_ok = true;
        if (text::trim(f[6]) != "Null") {
            occ = text::parse_int<std::uint64_t>(f[6]);
            occ_ok = occ.has_value();
        }
        if (!rank || !jif || !total || !ss || !pct || !occ_ok) {
            errors.push_back({it->line, "malformed metrics row"});
            continue;
        }
        out.push_back({{*rank, f[1], *jif}, *total, *ss, *pct, occ});
    }
    if (!errors.empty()) throw ParseError(source_name, std::move(errors));
    return out;
}

}  // namespace biblio

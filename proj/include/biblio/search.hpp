#pragma once

// Journal search cascade and the rank-ordered filter run.
//
//   1. exact title search; found -> Found if the subject area is present,
//      Dismissed otherwise
//   2. relaxed search; nothing -> NotFound
//   3. relaxed results without the subject area -> Dismissed
//   4. a single source title in the results -> Found
//   5. first source title sharing >75% of words both ways is searched
//      verbatim: area present -> ProbablyOK, absent -> ProbablyFalse;
//      no such title -> Unsure

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "biblio/csv.hpp"
#include "biblio/datasource.hpp"
#include "biblio/error.hpp"
#include "biblio/html_facet.hpp"
#include "biblio/ingest.hpp"
#include "biblio/model.hpp"
#include "biblio/names.hpp"

namespace biblio {

enum class Tag { Found, Dismissed, NotFound, ProbablyOK, ProbablyFalse, Unsure };

inline constexpr Tag kAllTags[] = {Tag::Found,      Tag::Dismissed,     Tag::NotFound,
                                   Tag::ProbablyOK, Tag::ProbablyFalse, Tag::Unsure};

inline std::string_view to_string(Tag tag) noexcept {
    switch (tag) {
    case Tag::Found: return "Found";
    case Tag::Dismissed: return "Dismissed";
    case Tag::NotFound: return "not found";
    case Tag::ProbablyOK: return "Probably OK";
    case Tag::ProbablyFalse: return "Probably False";
    case Tag::Unsure: return "Unsure";
    }
    return "";
}

inline std::optional<Tag> parse_tag(std::string_view s) {
    for (const auto t : kAllTags) {
        if (text::iequals(to_string(t), text::trim(s))) return t;
    }
    return std::nullopt;
}

/// Whether the cascade keeps a journal in the output list.
inline bool is_output_tag(Tag tag) noexcept { return tag != Tag::Dismissed; }

struct SearchOutcome {
    JournalRecord journal;
    Tag tag = Tag::NotFound;
    /// Portal title searched in the verbatim (third) query; set exactly for
    /// ProbablyOK and ProbablyFalse.
    std::optional<std::string> matched_source_title;
    int queries_issued = 0;

    friend bool operator==(const SearchOutcome&, const SearchOutcome&) = default;
};

struct RunConfig {
    int stop_count = 50;
    int year_floor = 2005;
    std::string target_subject_area = kSocialSciences;

    void validate() const {
        if (stop_count < 1) throw ConfigError("stop_count must be >= 1");
    }
};

/// Subject-area facet of a results page. No cluster_SUBJAREA list means an
/// empty histogram.
inline SubjectAreaHistogram parse_subject_facet(std::string_view facet_html) {
    SubjectAreaHistogram h;
    for (auto& [name, count] : html::parse_facet_list(facet_html, html::kSubjectAreaFacet)) h[name] += count;
    return h;
}

inline bool histogram_has_area(const SubjectAreaHistogram& h, std::string_view area) {
    return std::any_of(h.begin(), h.end(),
                       [&](const auto& e) { return e.second > 0 && text::iequals(e.first, area); });
}

inline SearchOutcome classify_journal(const JournalRecord& journal, QueryClient& client, const RunConfig& config) {
    const auto name = normalize_title(journal.title);
    const auto has_target = [&](const SearchResponse& r) {
        return histogram_has_area(parse_subject_facet(r.facet_html), config.target_subject_area);
    };

    SearchOutcome out{journal, Tag::NotFound, std::nullopt, 0};
    const auto exact = client.exact_title_query(name, config.year_floor);
    ++out.queries_issued;
    if (exact.found) {
        out.tag = has_target(exact) ? Tag::Found : Tag::Dismissed;
        return out;
    }

    const auto relaxed = client.relaxed_title_query(name, config.year_floor);
    ++out.queries_issued;
    if (!relaxed.found) {
        out.tag = Tag::NotFound;
        return out;
    }
    if (!has_target(relaxed)) {
        out.tag = Tag::Dismissed;  // possibly contaminated, dismissed anyway
        return out;
    }
    if (relaxed.source_titles.size() == 1) {
        out.tag = Tag::Found;
        return out;
    }

    // Only the first matching title is searched, keeping the budget at three.
    for (const auto& title : relaxed.source_titles) {
        NormalizedName candidate;
        try {
            candidate = normalize_title(title);
        } catch (const PreconditionError&) {
            continue;
        }
        if (!word_overlap_match(name, candidate)) continue;
        const auto pinned = client.cluster_exact_query(title, config.year_floor);
        ++out.queries_issued;
        out.tag = has_target(pinned) ? Tag::ProbablyOK : Tag::ProbablyFalse;
        out.matched_source_title = title;
        return out;
    }
    out.tag = Tag::Unsure;
    return out;
}

struct RunError {
    JournalRecord journal;
    TransportErrorKind kind = TransportErrorKind::Network;
    std::string message;
};

struct FilterResult {
    std::vector<SearchOutcome> outcomes;  // output list, rank order
    std::size_t searched_count = 0;       // journals examined, including dismissed and failed
    std::size_t dismissed_count = 0;
    std::vector<RunError> run_errors;
    /// Set when an unrecoverable transport error stopped the run early;
    /// `outcomes` then holds the partial output.
    std::optional<std::string> abort_reason;

    std::size_t count(Tag tag) const {
        return static_cast<std::size_t>(
            std::count_if(outcomes.begin(), outcomes.end(), [&](const auto& o) { return o.tag == tag; }));
    }
};

/// Classifies journals in rank order until `stop_count` journals are in the
/// output list or the ranking runs out. Dismissed journals are counted but
/// not listed. A journal whose classification hits a transport error is
/// retried once and then recorded as a run error.
inline FilterResult run_filter(std::span<const JournalRecord> ranking, QueryClient& client, const RunConfig& config,
                               const std::function<void(const SearchOutcome&)>& on_outcome = {}) {
    config.validate();
    for (std::size_t i = 1; i < ranking.size(); ++i) {
        if (ranking[i].rank <= ranking[i - 1].rank) throw PreconditionError("ranking is not in rank order");
    }

    FilterResult result;
    for (const auto& journal : ranking) {
        if (result.outcomes.size() >= static_cast<std::size_t>(config.stop_count)) break;
        ++result.searched_count;

        std::optional<SearchOutcome> outcome;
        for (int attempt = 0; attempt < 2 && !outcome; ++attempt) {
            try {
                outcome = classify_journal(journal, client, config);
            } catch (const TransportError& e) {
                if (e.unrecoverable()) {
                    result.abort_reason = journal.title + ": " + e.what();
                    return result;
                }
                if (attempt == 1) result.run_errors.push_back({journal, e.kind(), e.what()});
            }
        }
        if (!outcome) continue;
        if (on_outcome) on_outcome(*outcome);
        if (outcome->tag == Tag::Dismissed) {
            ++result.dismissed_count;
        } else {
            result.outcomes.push_back(std::move(*outcome));
        }
    }

    std::set<int> ranks;
    for (const auto& o : result.outcomes) {
        if (o.tag == Tag::Dismissed) throw std::logic_error("dismissed journal in output list");
        if (!ranks.insert(o.journal.rank).second) throw std::logic_error("journal listed twice");
    }
    return result;
}

/// "searched=804, output=50 (found=31, not_found=17, unsure=2)"; the
/// probable tags are appended only when present.
inline std::string format_summary(const FilterResult& r) {
    std::string s = "searched=" + std::to_string(r.searched_count) + ", output=" + std::to_string(r.outcomes.size()) +
                    " (found=" + std::to_string(r.count(Tag::Found)) +
                    ", not_found=" + std::to_string(r.count(Tag::NotFound)) +
                    ", unsure=" + std::to_string(r.count(Tag::Unsure));
    if (const auto n = r.count(Tag::ProbablyOK)) s += ", probably_ok=" + std::to_string(n);
    if (const auto n = r.count(Tag::ProbablyFalse)) s += ", probably_false=" + std::to_string(n);
    s += ")";
    return s;
}

// ---------------------------------------------------------------------------
// Output list CSV

inline constexpr const char* kOutcomeColumns[] = {"journal_name", "jcr_rank", "jif", "tag", "matched_source_title"};

inline std::string format_outcomes_csv(std::span<const SearchOutcome> outcomes) {
    std::string out = csv::format_row({std::begin(kOutcomeColumns), std::end(kOutcomeColumns)});
    for (const auto& o : outcomes) {
        out += csv::format_row({o.journal.title, std::to_string(o.journal.rank), text::format_double(o.journal.jif),
                                std::string(to_string(o.tag)), o.matched_source_title.value_or("")});
    }
    return out;
}

inline std::vector<SearchOutcome> parse_outcomes_csv(std::string_view content, const std::string& source_name) {
    auto rows = csv::parse(content);
    std::erase_if(rows, [](const csv::Row& r) { return r.blank(); });
    if (rows.empty() || rows.front().fields != std::vector<std::string>(std::begin(kOutcomeColumns),
                                                                        std::end(kOutcomeColumns))) {
        throw ParseError(source_name, {{1, "expected header journal_name,jcr_rank,jif,tag,matched_source_title"}});
    }
    std::vector<SearchOutcome> out;
    std::vector<LineError> errors;
    for (auto it = rows.begin() + 1; it != rows.end(); ++it) {
        const auto& f = it->fields;
        const auto rank = f.size() == 5 ? text::parse_int<int>(f[1]) : std::nullopt;
        const auto jif = f.size() == 5 ? text::parse_double(f[2]) : std::nullopt;
        const auto tag = f.size() == 5 ? parse_tag(f[3]) : std::nullopt;
        if (!rank || !jif || !tag) {
            errors.push_back({it->line, "malformed outcome row"});
            continue;
        }
        SearchOutcome o{{*rank, f[0], *jif}, *tag, std::nullopt, 0};
        if (!f[4].empty()) o.matched_source_title = f[4];
        out.push_back(std::move(o));
    }
    if (!errors.empty()) throw ParseError(source_name, std::move(errors));
    return out;
}

inline std::vector<SearchOutcome> read_outcomes_csv(const std::filesystem::path& path) {
    return parse_outcomes_csv(read_file(path, "filter output"), path.string());
}

}  // namespace biblio

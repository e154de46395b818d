#pragma once

// Query-client contract the search cascade runs against, and a deterministic
// portal simulator backed by a fixture corpus.

#include <algorithm>
#include <chrono>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "biblio/corpus.hpp"
#include "biblio/html_facet.hpp"
#include "biblio/model.hpp"
#include "biblio/names.hpp"

namespace biblio {

struct SearchResponse {
    bool found = false;
    /// Facet panel markup; empty when nothing was found.
    std::string facet_html;
    /// Distinct source titles in the portal's facet order (most documents first).
    std::vector<std::string> source_titles;
    /// Matching documents (simulator only). Points into `owner`.
    std::vector<const DocumentRecord*> documents;
    std::shared_ptr<const Corpus> owner;
};

/// The three searches the cascade needs. Implementations may hold state
/// (rate limiting), so the methods are non-const.
class QueryClient {
public:
    virtual ~QueryClient() = default;

    /// Source title restricted to the normalized words, cluster-pinned to the
    /// title-cased rendering of the name.
    virtual SearchResponse exact_title_query(const NormalizedName& name, int year_floor) = 0;
    /// Any source title sharing a word with the name.
    virtual SearchResponse relaxed_title_query(const NormalizedName& name, int year_floor) = 0;
    /// Cluster-pinned to a source title exactly as the portal lists it.
    virtual SearchResponse cluster_exact_query(const std::string& verbatim_source_title, int year_floor) = 0;

    virtual std::chrono::milliseconds min_request_delay() const = 0;
};

namespace detail {

inline SearchResponse respond(const Corpus& corpus, const std::vector<std::size_t>& hits) {
    SearchResponse r;
    if (hits.empty()) return r;
    r.found = true;

    std::map<std::string, std::uint64_t> areas, titles;
    r.documents.reserve(hits.size());
    for (const auto i : hits) {
        const auto& doc = corpus[i];
        r.documents.push_back(&doc);
        ++titles[doc.source_title];
        for (const auto& a : doc.subject_areas) ++areas[a];
    }
    const auto ordered = [](const std::map<std::string, std::uint64_t>& m) {
        html::FacetEntries e(m.begin(), m.end());
        std::stable_sort(e.begin(), e.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
        return e;
    };
    const auto title_facet = ordered(titles);
    for (const auto& [t, n] : title_facet) r.source_titles.push_back(t);
    r.facet_html = "<div id=\"resultsFacets\">\n" + html::render_facet_list(html::kSubjectAreaFacet, ordered(areas)) +
                   html::render_facet_list(html::kSourceTitleFacet, title_facet) + "</div>\n";
    return r;
}

}  // namespace detail

/// Exact search against a corpus. The portal is case sensitive on the
/// cluster term: a journal is found only when its registered title equals the
/// title-cased rendering of the query, so "JAMA-Journal Of ..." is missed by a
/// "Jama Journal Of ..." query.
inline SearchResponse sim_exact_title_query(const Corpus& corpus, const NormalizedName& name, int year_floor) {
    const auto display = render_title_case(name);
    std::vector<std::size_t> hits;
    for (const auto i : corpus.by_name(name)) {
        if (corpus[i].year > year_floor && corpus[i].source_title == display) hits.push_back(i);
    }
    return detail::respond(corpus, hits);
}

/// Relaxed search: every source title sharing at least one word with the
/// query. Similarly named journals leak into the results.
inline SearchResponse sim_relaxed_title_query(const Corpus& corpus, const NormalizedName& name, int year_floor) {
    auto hits = corpus.sharing_any_word(name);
    std::erase_if(hits, [&](std::size_t i) { return corpus[i].year <= year_floor; });
    return detail::respond(corpus, hits);
}

inline SearchResponse sim_cluster_exact_query(const Corpus& corpus, const std::string& verbatim_source_title,
                                              int year_floor) {
    std::vector<std::size_t> hits;
    for (const auto i : corpus.by_verbatim_title(verbatim_source_title)) {
        if (corpus[i].year > year_floor) hits.push_back(i);
    }
    return detail::respond(corpus, hits);
}

/// Read-only after construction; safe to share across threads.
class SimulatedPortal final : public QueryClient {
public:
    explicit SimulatedPortal(std::shared_ptr<const Corpus> corpus) : corpus_(std::move(corpus)) {}

    SearchResponse exact_title_query(const NormalizedName& name, int year_floor) override {
        return own(sim_exact_title_query(*corpus_, name, year_floor));
    }
    SearchResponse relaxed_title_query(const NormalizedName& name, int year_floor) override {
        return own(sim_relaxed_title_query(*corpus_, name, year_floor));
    }
    SearchResponse cluster_exact_query(const std::string& verbatim_source_title, int year_floor) override {
        return own(sim_cluster_exact_query(*corpus_, verbatim_source_title, year_floor));
    }
    std::chrono::milliseconds min_request_delay() const override { return std::chrono::milliseconds{0}; }

    const Corpus& corpus() const noexcept { return *corpus_; }

private:
    SearchResponse own(SearchResponse r) const {
        r.owner = corpus_;
        return r;
    }

    std::shared_ptr<const Corpus> corpus_;
};

}  // namespace biblio

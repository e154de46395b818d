#pragma once

// Keyword co-occurrence networks: construction with an occurrence threshold,
// modularity clustering and a tab-separated export for word-cloud tools.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "biblio/error.hpp"
#include "biblio/ingest.hpp"
#include "biblio/model.hpp"
#include "biblio/text.hpp"

namespace biblio {

struct KeywordNode {
    std::uint64_t occurrences = 0;  // documents listing the keyword
    double mean_year = 0.0;         // mean publication year of those documents
    std::optional<int> cluster_id;

    friend bool operator==(const KeywordNode&, const KeywordNode&) = default;
};

/// Unordered keyword pair, stored with first < second.
using KeywordPair = std::pair<std::string, std::string>;

inline KeywordPair make_pair_key(std::string a, std::string b) {
    if (b < a) std::swap(a, b);
    return {std::move(a), std::move(b)};
}

struct CoOccurrenceGraph {
    std::map<std::string, KeywordNode> nodes;
    std::map<KeywordPair, std::uint64_t> edges;  // documents listing both

    std::uint64_t weight(const std::string& a, const std::string& b) const {
        const auto it = edges.find(make_pair_key(a, b));
        return it == edges.end() ? 0 : it->second;
    }

    /// Distinct neighbours of every node.
    std::map<std::string, std::size_t> degrees() const {
        std::map<std::string, std::size_t> d;
        for (const auto& [k, n] : nodes) d[k] = 0;
        for (const auto& [pair, w] : edges) {
            ++d[pair.first];
            ++d[pair.second];
        }
        return d;
    }

    bool empty() const noexcept { return nodes.empty(); }

    friend bool operator==(const CoOccurrenceGraph&, const CoOccurrenceGraph&) = default;
};

namespace detail {

template <typename DocRange, typename Deref>
CoOccurrenceGraph build_graph_impl(const DocRange& docs, Deref deref, std::uint64_t min_occurrence,
                                   const YearWindow& window) {
    if (min_occurrence < 1) throw PreconditionError("min_occurrence must be >= 1");
    window.validate();

    std::vector<std::vector<std::string>> doc_keywords;
    std::map<std::string, std::pair<std::uint64_t, long long>> tally;  // occurrences, year sum
    for (const auto& entry : docs) {
        const DocumentRecord& d = deref(entry);
        if (!window.contains(d.year) || !d.keywords_available) continue;
        std::vector<std::string> kws(d.keywords.begin(), d.keywords.end());
        std::sort(kws.begin(), kws.end());
        kws.erase(std::unique(kws.begin(), kws.end()), kws.end());
        for (const auto& k : kws) {
            auto& t = tally[k];
            ++t.first;
            t.second += d.year;
        }
        doc_keywords.push_back(std::move(kws));
    }

    CoOccurrenceGraph g;
    for (const auto& [k, t] : tally) {
        if (t.first >= min_occurrence) {
            g.nodes.emplace(k, KeywordNode{t.first, static_cast<double>(t.second) / static_cast<double>(t.first), {}});
        }
    }
    for (auto& kws : doc_keywords) {
        std::erase_if(kws, [&](const std::string& k) { return !g.nodes.contains(k); });
        for (std::size_t i = 0; i < kws.size(); ++i) {
            for (std::size_t j = i + 1; j < kws.size(); ++j) ++g.edges[{kws[i], kws[j]}];  // sorted: i < j
        }
    }
    return g;
}

}  // namespace detail

/// Keywords present in at least `min_occurrence` in-window documents become
/// nodes; two nodes are linked by the number of in-window documents listing
/// both. Records without keyword data are skipped.
inline CoOccurrenceGraph build_graph(std::span<const DocumentRecord> docs, std::uint64_t min_occurrence,
                                     const YearWindow& window) {
    return detail::build_graph_impl(docs, [](const DocumentRecord& d) -> const DocumentRecord& { return d; },
                                    min_occurrence, window);
}

inline CoOccurrenceGraph build_graph(std::span<const DocumentRecord* const> docs, std::uint64_t min_occurrence,
                                     const YearWindow& window) {
    return detail::build_graph_impl(docs, [](const DocumentRecord* d) -> const DocumentRecord& { return *d; },
                                    min_occurrence, window);
}

/// Number of distinct keywords linked to `keyword`.
inline std::size_t link_count(const CoOccurrenceGraph& graph, const std::string& keyword) {
    if (!graph.nodes.contains(keyword)) throw PreconditionError("unknown keyword '" + keyword + "'");
    return static_cast<std::size_t>(std::count_if(graph.edges.begin(), graph.edges.end(), [&](const auto& e) {
        return e.first.first == keyword || e.first.second == keyword;
    }));
}

// ---------------------------------------------------------------------------
// Clustering

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Weighted graph over dense node ids; self_weight holds the weight of edges
/// collapsed inside an aggregated node.
struct DenseGraph {
    std::vector<std::vector<std::pair<std::size_t, double>>> adj;
    std::vector<double> self_weight;

    std::size_t size() const { return adj.size(); }

    double strength(std::size_t i) const {
        double k = 2.0 * self_weight[i];
        for (const auto& [j, w] : adj[i]) k += w;
        return k;
    }
};

/// One local-moving phase. Returns true if any node changed community.
inline bool local_moving(const DenseGraph& g, std::vector<std::size_t>& comm, double resolution, std::uint64_t& rng) {
    const std::size_t n = g.size();
    std::vector<double> k(n), tot(n, 0.0);
    double m2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        k[i] = g.strength(i);
        m2 += k[i];
        tot[comm[i]] += k[i];
    }
    if (m2 <= 0) return false;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[splitmix64(rng) % i]);

    bool any_move = false;
    std::vector<double> link(n, 0.0);
    std::vector<std::size_t> touched;
    for (bool moved = true; moved;) {
        moved = false;
        for (const auto i : order) {
            const auto old = comm[i];
            touched.clear();
            for (const auto& [j, w] : g.adj[i]) {
                if (link[comm[j]] == 0.0) touched.push_back(comm[j]);
                link[comm[j]] += w;
            }
            tot[old] -= k[i];
            auto best = old;
            double best_gain = link[old] - resolution * tot[old] * k[i] / m2;
            std::sort(touched.begin(), touched.end());
            for (const auto c : touched) {
                const double gain = link[c] - resolution * tot[c] * k[i] / m2;
                if (gain > best_gain + 1e-12) {
                    best_gain = gain;
                    best = c;
                }
            }
            tot[best] += k[i];
            comm[i] = best;
            for (const auto c : touched) link[c] = 0.0;
            if (best != old) moved = any_move = true;
        }
    }
    return any_move;
}

}  // namespace detail

/// Modularity of the current cluster assignment (unassigned nodes count as
/// singletons).
inline double modularity(const CoOccurrenceGraph& graph, double resolution = 1.0) {
    double m = 0;
    std::map<std::string, double> strength;
    for (const auto& [pair, w] : graph.edges) {
        m += static_cast<double>(w);
        strength[pair.first] += static_cast<double>(w);
        strength[pair.second] += static_cast<double>(w);
    }
    if (m == 0) return 0.0;
    const auto cluster_of = [&](const std::string& k) -> std::string {
        const auto& id = graph.nodes.at(k).cluster_id;
        return id ? "#" + std::to_string(*id) : k;
    };
    std::map<std::string, double> internal, total;
    for (const auto& [pair, w] : graph.edges) {
        if (cluster_of(pair.first) == cluster_of(pair.second)) internal[cluster_of(pair.first)] += static_cast<double>(w);
    }
    for (const auto& [k, s] : strength) total[cluster_of(k)] += s;
    double q = 0;
    for (const auto& [c, t] : total) {
        const double in = internal.contains(c) ? internal.at(c) : 0.0;
        q += in / m - resolution * (t / (2 * m)) * (t / (2 * m));
    }
    return q;
}

/// Multi-level greedy modularity optimisation (local moving followed by
/// aggregation until no node moves). Node visiting order is drawn from
/// `seed`. Nodes only ever join a neighbour's cluster, so disconnected
/// components stay apart. Cluster ids are 1-based, largest cluster first.
inline CoOccurrenceGraph cluster_graph(CoOccurrenceGraph graph, double resolution, std::uint64_t seed) {
    if (graph.empty()) throw PreconditionError("cannot cluster an empty graph");
    if (!(resolution > 0)) throw PreconditionError("resolution must be positive");

    std::vector<std::string> names;
    std::map<std::string, std::size_t> index;
    for (const auto& [k, n] : graph.nodes) {
        index[k] = names.size();
        names.push_back(k);
    }
    detail::DenseGraph level;
    level.adj.resize(names.size());
    level.self_weight.assign(names.size(), 0.0);
    for (const auto& [pair, w] : graph.edges) {
        const auto a = index.at(pair.first), b = index.at(pair.second);
        level.adj[a].emplace_back(b, static_cast<double>(w));
        level.adj[b].emplace_back(a, static_cast<double>(w));
    }

    std::vector<std::size_t> membership(names.size());
    std::iota(membership.begin(), membership.end(), 0);
    std::uint64_t rng = seed;

    while (true) {
        std::vector<std::size_t> comm(level.size());
        std::iota(comm.begin(), comm.end(), 0);
        if (!detail::local_moving(level, comm, resolution, rng)) break;

        std::map<std::size_t, std::size_t> renumber;
        for (const auto c : comm) renumber.try_emplace(c, renumber.size());
        for (auto& m : membership) m = renumber.at(comm[m]);

        detail::DenseGraph next;
        next.adj.resize(renumber.size());
        next.self_weight.assign(renumber.size(), 0.0);
        std::vector<std::map<std::size_t, double>> merged(renumber.size());
        for (std::size_t i = 0; i < level.size(); ++i) {
            const auto ci = renumber.at(comm[i]);
            next.self_weight[ci] += level.self_weight[i];
            for (const auto& [j, w] : level.adj[i]) {
                const auto cj = renumber.at(comm[j]);
                if (ci == cj) next.self_weight[ci] += w / 2.0;  // each internal edge is seen twice
                else merged[ci][cj] += w;
            }
        }
        for (std::size_t c = 0; c < merged.size(); ++c) next.adj[c].assign(merged[c].begin(), merged[c].end());
        level = std::move(next);
    }

    // Stable ids: larger clusters first, then by alphabetically first member.
    std::map<std::size_t, std::pair<std::size_t, std::string>> info;  // community -> (size, first member)
    for (std::size_t i = 0; i < names.size(); ++i) {
        auto& [size, first] = info[membership[i]];
        if (size++ == 0) first = names[i];  // names are sorted, so the first seen is the smallest
    }
    std::vector<std::pair<std::size_t, std::pair<std::size_t, std::string>>> ordered(info.begin(), info.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        if (a.second.first != b.second.first) return a.second.first > b.second.first;
        return a.second.second < b.second.second;
    });
    std::map<std::size_t, int> cluster_id;
    for (std::size_t i = 0; i < ordered.size(); ++i) cluster_id[ordered[i].first] = static_cast<int>(i) + 1;
    for (std::size_t i = 0; i < names.size(); ++i) graph.nodes.at(names[i]).cluster_id = cluster_id.at(membership[i]);
    return graph;
}

// ---------------------------------------------------------------------------
// Export: node lines, a blank line, edge lines.
//   keyword<TAB>occurrences<TAB>mean_year<TAB>cluster_id<TAB>degree
//   keyword_a<TAB>keyword_b<TAB>weight

inline std::string format_wordcloud(const CoOccurrenceGraph& graph) {
    const auto degree = graph.degrees();
    std::vector<const std::pair<const std::string, KeywordNode>*> nodes;
    for (const auto& e : graph.nodes) nodes.push_back(&e);
    std::stable_sort(nodes.begin(), nodes.end(),
                     [](const auto* a, const auto* b) { return a->second.occurrences > b->second.occurrences; });

    std::string out;
    for (const auto* e : nodes) {
        const auto& [k, n] = *e;
        out += k + '\t' + std::to_string(n.occurrences) + '\t' + text::format_double(n.mean_year) + '\t' +
               (n.cluster_id ? std::to_string(*n.cluster_id) : std::string()) + '\t' + std::to_string(degree.at(k)) +
               '\n';
    }
    out += '\n';
    for (const auto& [pair, w] : graph.edges) out += pair.first + '\t' + pair.second + '\t' + std::to_string(w) + '\n';
    return out;
}

inline void export_wordcloud(const CoOccurrenceGraph& graph, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write network export '" + path.string() + "'");
    out << format_wordcloud(graph);
    if (!out) throw DataError("failed writing network export '" + path.string() + "'");
}

inline CoOccurrenceGraph parse_wordcloud(std::string_view content, const std::string& source_name) {
    CoOccurrenceGraph g;
    std::vector<LineError> errors;
    std::map<std::string, std::size_t> declared_degree;
    bool in_edges = false;
    std::size_t line_no = 0;
    for (const auto& line : text::split(content, '\n')) {
        ++line_no;
        if (line.empty()) {
            if (!in_edges) in_edges = true;
            continue;
        }
        const auto f = text::split(line, '\t');
        if (!in_edges) {
            const auto occ = f.size() == 5 ? text::parse_int<std::uint64_t>(f[1]) : std::nullopt;
            const auto year = f.size() == 5 ? text::parse_double(f[2]) : std::nullopt;
            const auto deg = f.size() == 5 ? text::parse_int<std::size_t>(f[4]) : std::nullopt;
            std::optional<int> cluster;
            if (f.size() == 5 && !f[3].empty()) cluster = text::parse_int<int>(f[3]);
            if (!occ || !year || !deg || (f.size() == 5 && !f[3].empty() && !cluster)) {
                errors.push_back({line_no, "malformed node line"});
                continue;
            }
            g.nodes[f[0]] = {*occ, *year, cluster};
            declared_degree[f[0]] = *deg;
        } else {
            const auto w = f.size() == 3 ? text::parse_int<std::uint64_t>(f[2]) : std::nullopt;
            if (!w || !g.nodes.contains(f[0]) || !g.nodes.contains(f[1]) || f[0] == f[1]) {
                errors.push_back({line_no, "malformed edge line"});
                continue;
            }
            g.edges[make_pair_key(f[0], f[1])] = *w;
        }
    }
    if (errors.empty()) {
        const auto degree = g.degrees();
        for (const auto& [k, d] : declared_degree) {
            if (degree.at(k) != d) errors.push_back({0, "degree of '" + k + "' disagrees with edge list"});
        }
    }
    if (!errors.empty()) throw ParseError(source_name, std::move(errors));
    return g;
}

inline CoOccurrenceGraph read_wordcloud(const std::filesystem::path& path) {
    return parse_wordcloud(read_file(path, "network export"), path.string());
}

}  // namespace biblio

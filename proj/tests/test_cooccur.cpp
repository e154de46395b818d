#include <gtest/gtest.h>

#include <set>

#include "biblio/cooccur.hpp"
#include "test_support.hpp"

using namespace biblio;
using biblio::testkit::doc;

namespace {

CoOccurrenceGraph graph_from_edges(const std::vector<std::tuple<std::string, std::string, std::uint64_t>>& edges) {
    CoOccurrenceGraph g;
    for (const auto& [a, b, w] : edges) {
        g.nodes[a].occurrences = 1;
        g.nodes[b].occurrences = 1;
        g.edges[make_pair_key(a, b)] = w;
    }
    return g;
}

CoOccurrenceGraph clique(const std::vector<std::string>& names) {
    std::vector<std::tuple<std::string, std::string, std::uint64_t>> e;
    for (std::size_t i = 0; i < names.size(); ++i) {
        for (std::size_t j = i + 1; j < names.size(); ++j) e.emplace_back(names[i], names[j], 1);
    }
    return graph_from_edges(e);
}

CoOccurrenceGraph merge(CoOccurrenceGraph a, const CoOccurrenceGraph& b) {
    a.nodes.insert(b.nodes.begin(), b.nodes.end());
    a.edges.insert(b.edges.begin(), b.edges.end());
    return a;
}

/// Modularity straight from the definition: sum over node pairs of
/// (A_ij - k_i k_j / 2m) for pairs in the same cluster, divided by 2m.
double reference_modularity(const CoOccurrenceGraph& g, const std::map<std::string, int>& cluster) {
    std::map<std::string, double> k;
    double two_m = 0;
    for (const auto& [p, w] : g.edges) {
        k[p.first] += static_cast<double>(w);
        k[p.second] += static_cast<double>(w);
        two_m += 2.0 * static_cast<double>(w);
    }
    double q = 0;
    for (const auto& [i, ni] : g.nodes) {
        for (const auto& [j, nj] : g.nodes) {
            if (cluster.at(i) != cluster.at(j)) continue;
            const double a = i == j ? 0.0 : static_cast<double>(g.weight(i, j));
            q += a - k[i] * k[j] / two_m;
        }
    }
    return q / two_m;
}

std::map<std::string, int> clusters_of(const CoOccurrenceGraph& g) {
    std::map<std::string, int> out;
    for (const auto& [k, n] : g.nodes) out[k] = n.cluster_id.value();
    return out;
}

}  // namespace

TEST(Graph, SmallExampleByHand) {
    auto hidden = doc("J", 2010, {});
    hidden.keywords_available = false;
    const std::vector<DocumentRecord> docs{
        doc("J", 2010, {"a", "b", "c"}), doc("J", 2012, {"a", "b"}), doc("J", 2014, {"a"}),
        doc("J", 2016, {"b", "c", "d"}), doc("J", 2020, {"a", "b", "c", "d"}), hidden,
    };
    const auto g = build_graph(docs, 2, {2006, 2018});
    ASSERT_EQ(g.nodes.size(), 3U);
    EXPECT_EQ(g.nodes.at("a").occurrences, 3U);
    EXPECT_DOUBLE_EQ(g.nodes.at("a").mean_year, 2012.0);
    EXPECT_EQ(g.nodes.at("c").occurrences, 2U);
    EXPECT_DOUBLE_EQ(g.nodes.at("c").mean_year, 2013.0);
    EXPECT_EQ(g.weight("a", "b"), 2U);
    EXPECT_EQ(g.weight("b", "a"), 2U);
    EXPECT_EQ(g.weight("a", "c"), 1U);
    EXPECT_EQ(g.weight("b", "c"), 2U);
    EXPECT_EQ(g.weight("a", "d"), 0U);
    EXPECT_EQ(link_count(g, "a"), 2U);
    EXPECT_THROW(link_count(g, "d"), PreconditionError);
    EXPECT_THROW(build_graph(docs, 0, {2006, 2018}), PreconditionError);
    EXPECT_TRUE(build_graph(std::vector<DocumentRecord>{}, 1, {2006, 2018}).empty());
}

TEST(Graph, KeywordsAreOpaqueStrings) {
    const std::vector<DocumentRecord> docs{doc("J", 2010, {"Climate Change", "climate change"})};
    const auto g = build_graph(docs, 1, {2006, 2018});
    EXPECT_EQ(g.nodes.size(), 2U);
    EXPECT_EQ(g.weight("Climate Change", "climate change"), 1U);
}

TEST(GraphProperty, MatchesBruteForce) {
    testkit::Gen gen(41);
    for (int round = 0; round < 300; ++round) {
        std::vector<DocumentRecord> docs;
        const int n = gen.uniform(0, 30);
        for (int i = 0; i < n; ++i) {
            std::vector<std::string> kws;
            for (const auto& w : gen.words(0, 5, 1)) {
                if (std::find(kws.begin(), kws.end(), w) == kws.end()) kws.push_back(w);
            }
            auto d = doc("J", gen.uniform(2000, 2022), kws);
            d.keywords_available = !gen.chance(0.05);
            if (!d.keywords_available) d.keywords.clear();
            docs.push_back(d);
        }
        const YearWindow window{gen.uniform(2000, 2011), gen.uniform(2011, 2022)};
        const auto min_occ = static_cast<std::uint64_t>(gen.uniform(1, 5));
        const auto g = build_graph(docs, min_occ, window);

        std::set<std::string> vocabulary;
        for (const auto& d : docs) vocabulary.insert(d.keywords.begin(), d.keywords.end());
        const auto in_window = [&](const DocumentRecord& d) { return d.year >= window.first && d.year <= window.last; };
        const auto lists = [](const DocumentRecord& d, const std::string& k) {
            return std::find(d.keywords.begin(), d.keywords.end(), k) != d.keywords.end();
        };
        std::set<std::string> expected_nodes;
        for (const auto& k : vocabulary) {
            std::uint64_t c = 0;
            for (const auto& d : docs) c += in_window(d) && lists(d, k);
            if (c >= min_occ) {
                expected_nodes.insert(k);
                ASSERT_EQ(g.nodes.at(k).occurrences, c);
            }
        }
        ASSERT_EQ(g.nodes.size(), expected_nodes.size());
        std::size_t expected_edges = 0;
        for (const auto& a : expected_nodes) {
            for (const auto& b : expected_nodes) {
                if (!(a < b)) continue;
                std::uint64_t w = 0;
                for (const auto& d : docs) w += in_window(d) && lists(d, a) && lists(d, b);
                ASSERT_EQ(g.weight(a, b), w);
                expected_edges += w > 0;
            }
        }
        ASSERT_EQ(g.edges.size(), expected_edges);

        // Raising the threshold only removes nodes; surviving edges keep their weights.
        const auto stricter = build_graph(docs, min_occ + 1, window);
        for (const auto& [k, node] : stricter.nodes) ASSERT_EQ(g.nodes.at(k), node);
        for (const auto& [p, w] : stricter.edges) ASSERT_EQ(g.edges.at(p), w);
    }
}

TEST(Modularity, TwoTrianglesJoinedByABridge) {
    auto g = graph_from_edges({{"a", "b", 1}, {"b", "c", 1}, {"a", "c", 1}, {"d", "e", 1}, {"e", "f", 1},
                               {"d", "f", 1}, {"c", "d", 1}});
    const auto clustered = cluster_graph(g, 1.0, 1);
    const auto c = clusters_of(clustered);
    EXPECT_EQ(c.at("a"), c.at("b"));
    EXPECT_EQ(c.at("a"), c.at("c"));
    EXPECT_EQ(c.at("d"), c.at("f"));
    EXPECT_NE(c.at("a"), c.at("d"));
    EXPECT_NEAR(modularity(clustered), 6.0 / 7.0 - 0.5, 1e-12);
    EXPECT_NEAR(modularity(clustered), reference_modularity(clustered, c), 1e-12);
}

TEST(Clustering, CliqueIsOneCluster) {
    const auto g = cluster_graph(clique({"a", "b", "c", "d", "e"}), 1.0, 7);
    for (const auto& [k, n] : g.nodes) EXPECT_EQ(n.cluster_id, 1);
}

TEST(Clustering, DisjointTrianglesStayApart) {
    const auto c = clusters_of(cluster_graph(merge(clique({"a", "b", "c"}), clique({"x", "y", "z"})), 1.0, 11));
    EXPECT_EQ(c.at("a"), 1);
    EXPECT_EQ(c.at("b"), 1);
    EXPECT_EQ(c.at("c"), 1);
    EXPECT_EQ(c.at("x"), 2);
    EXPECT_EQ(c.at("y"), 2);
    EXPECT_EQ(c.at("z"), 2);
}

TEST(Clustering, ComponentsNeverMergeAndIdsAreBySize) {
    auto g = merge(clique({"p", "q", "r"}), clique({"a", "b", "c", "d"}));
    g.nodes["lonely"].occurrences = 9;
    const auto out = cluster_graph(g, 1.0, 3);
    const auto c = clusters_of(out);
    EXPECT_EQ(c.at("a"), 1);
    EXPECT_EQ(c.at("d"), 1);
    EXPECT_EQ(c.at("p"), 2);
    EXPECT_EQ(c.at("r"), 2);
    EXPECT_EQ(c.at("lonely"), 3);
}

TEST(Clustering, Preconditions) {
    EXPECT_THROW(cluster_graph({}, 1.0, 1), PreconditionError);
    EXPECT_THROW(cluster_graph(clique({"a", "b"}), 0.0, 1), PreconditionError);
    EXPECT_DOUBLE_EQ(modularity(CoOccurrenceGraph{}), 0.0);
}

TEST(ClusteringProperty, DeterministicAndNoWorseThanTrivialPartitions) {
    testkit::Gen gen(43);
    for (int round = 0; round < 150; ++round) {
        const int n = gen.uniform(2, 9);
        CoOccurrenceGraph g;
        for (int i = 0; i < n; ++i) g.nodes[std::string(1, static_cast<char>('a' + i))].occurrences = 1;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (gen.chance(0.4)) {
                    g.edges[{std::string(1, static_cast<char>('a' + i)), std::string(1, static_cast<char>('a' + j))}] =
                        static_cast<std::uint64_t>(gen.uniform(1, 4));
                }
            }
        }
        const auto seed = static_cast<std::uint64_t>(gen.uniform(0, 1000));
        const auto a = cluster_graph(g, 1.0, seed);
        ASSERT_EQ(a, cluster_graph(g, 1.0, seed));
        if (g.edges.empty()) continue;

        const auto c = clusters_of(a);
        const double q = modularity(a);
        ASSERT_NEAR(q, reference_modularity(a, c), 1e-9);

        std::map<std::string, int> singletons, one;
        int id = 0;
        for (const auto& [k, node] : g.nodes) {
            singletons[k] = ++id;
            one[k] = 1;
        }
        ASSERT_GE(q, reference_modularity(g, singletons) - 1e-9);
        ASSERT_GE(q, reference_modularity(g, one) - 1e-9);

        // Every cluster is connected through its own edges.
        for (const auto& [k, cid] : c) {
            bool linked = std::count_if(c.begin(), c.end(), [&](const auto& e) { return e.second == cid; }) == 1;
            for (const auto& [p, w] : g.edges) {
                if ((p.first == k && c.at(p.second) == cid) || (p.second == k && c.at(p.first) == cid)) linked = true;
            }
            ASSERT_TRUE(linked) << k;
        }
    }
}

TEST(ClusteringProperty, BarbellMatchesBestTwoWaySplit) {
    // Two 4-cliques joined by one edge: the best split over all 2^7 bipartitions
    // is the obvious one, and the clustering must reach it.
    auto g = merge(clique({"a", "b", "c", "d"}), clique({"e", "f", "g", "h"}));
    g.edges[make_pair_key("d", "e")] = 1;
    std::vector<std::string> names;
    for (const auto& [k, n] : g.nodes) names.push_back(k);
    double best = -1;
    for (unsigned mask = 0; mask < (1U << names.size()); ++mask) {
        std::map<std::string, int> part;
        for (std::size_t i = 0; i < names.size(); ++i) part[names[i]] = (mask >> i) & 1U;
        best = std::max(best, reference_modularity(g, part));
    }
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        EXPECT_NEAR(modularity(cluster_graph(g, 1.0, seed)), best, 1e-12);
    }
}

TEST(Wordcloud, RoundTripAndValidation) {
    const std::vector<DocumentRecord> docs{doc("J", 2010, {"x y", "b"}), doc("J", 2011, {"x y", "b", "c"}),
                                           doc("J", 2012, {"c"})};
    const auto g = cluster_graph(build_graph(docs, 1, {2006, 2018}), 1.0, 5);
    const auto text = format_wordcloud(g);
    EXPECT_EQ(text.substr(0, text.find('\n')), "b\t2\t2010.5\t1\t2");
    EXPECT_EQ(parse_wordcloud(text, "n.tsv"), g);

    testkit::TempDir dir;
    export_wordcloud(g, dir / "n.tsv");
    EXPECT_EQ(read_wordcloud(dir / "n.tsv"), g);

    EXPECT_THROW(parse_wordcloud("a\t1\t2010\t\t1\n\n", "bad"), ParseError);  // degree without edges
    EXPECT_THROW(parse_wordcloud("a\t1\t2010\t\t0\n\na\tzz\t1\n", "bad"), ParseError);
    EXPECT_THROW(parse_wordcloud("a\tone\t2010\t\t0\n", "bad"), ParseError);
}

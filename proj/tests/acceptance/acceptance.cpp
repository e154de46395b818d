// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Tolerances and time limits are fixed here, not passed in.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include <nlohmann/json.hpp>

#include "biblio/cooccur.hpp"
#include "biblio/digest.hpp"
#include "biblio/metrics.hpp"
#include "biblio/pipeline.hpp"
#include "biblio/query_urls.hpp"
#include "biblio/reports.hpp"
#include "biblio/search.hpp"
#include "biblio_cli.hpp"

namespace fs = std::filesystem;
using namespace biblio;

namespace {

constexpr double kPercentTolerance = 0.05;  // percentage points
constexpr double kFilterSeconds = 10.0;
constexpr double kMetricsSeconds = 5.0;
constexpr double kReportSeconds = 5.0;

const fs::path kData = BIBLIO_DATA_DIR;

struct Check {
    bool ok = true;
    std::string detail;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

class Scratch {
public:
    Scratch() {
        path_ = fs::temp_directory_path() / ("biblio-acceptance-" + std::to_string(::getpid()));
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~Scratch() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    fs::path operator/(const std::string& s) const { return path_ / s; }

private:
    fs::path path_;
};

int cli_run(std::vector<std::string> args, std::string* err_text = nullptr) {
    std::ostringstream out, err;
    const int code = cli::run(std::move(args), out, err, [](const char*) -> const char* { return nullptr; });
    if (err_text) *err_text = err.str();
    return code;
}

std::vector<std::string> fixture_args(const fs::path& out_dir) {
    return {"--rank-csv-path", (kData / "jcr_2017_synthetic.csv").string(), "--corpus-path",
            (kData / "corpus.jsonl").string(), "--output-dir", out_dir.string()};
}

std::vector<std::string> plus(std::vector<std::string> v, const std::string& cmd) {
    v.push_back(cmd);
    return v;
}

template <typename F>
double timed(F&& f) {
    const auto start = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string slurp(const fs::path& p) { return read_file(p, "output"); }

// ---------------------------------------------------------------------------

Check cascade_regression(const fs::path& out) {
    Check c;
    int code = -1;
    std::string err;
    const double secs = timed([&] { code = cli_run(plus(fixture_args(out), "filter"), &err); });
    c.expect(code == 0, "filter exit code " + std::to_string(code) + ": " + err);
    if (!c.ok) return c;
    const auto outcomes = read_outcomes_csv(out / kFilterOutputFile);
    std::map<Tag, int> tags;
    for (const auto& o : outcomes) ++tags[o.tag];
    c.expect(outcomes.size() == 50, "rows " + std::to_string(outcomes.size()) + " != 50");
    c.expect(tags[Tag::Found] == 31, "found " + std::to_string(tags[Tag::Found]) + " != 31");
    c.expect(tags[Tag::NotFound] == 17, "not found " + std::to_string(tags[Tag::NotFound]) + " != 17");
    c.expect(tags[Tag::Unsure] == 2, "unsure " + std::to_string(tags[Tag::Unsure]) + " != 2");
    const auto summary = slurp(out / kFilterSummaryFile);
    c.expect(summary.rfind("searched=804, ", 0) == 0, "summary: " + summary.substr(0, summary.find('\n')));
    c.expect(secs < kFilterSeconds, "took " + std::to_string(secs) + " s");
    c.detail = c.ok ? "50 rows, 31/17/2, searched=804, " + text::format_fixed(secs, 2) + " s" : c.detail;
    return c;
}

Check matching_anchors() {
    Check c;
    c.expect(!word_overlap_match(normalize_title("nature materials"), normalize_title("nature")),
             "'nature materials' vs 'nature' matched");
    std::mt19937_64 rng(2);
    const auto token_set = [&] {
        std::vector<std::string> words;
        const auto n = std::uniform_int_distribution<int>(1, 6)(rng);
        for (int i = 0; i < n; ++i) words.push_back(std::string(1, static_cast<char>('a' + rng() % 8)));
        return NormalizedName::from_tokens(words);
    };
    for (int i = 0; i < 10000 && c.ok; ++i) {
        const auto a = token_set(), b = token_set();
        c.expect(word_overlap_match(a, a), "not reflexive on pair " + std::to_string(i));
        c.expect(word_overlap_match(a, b) == word_overlap_match(b, a), "not symmetric on pair " + std::to_string(i));
    }
    if (c.ok) c.detail = "anchor false; reflexive and symmetric on 10000 pairs";
    return c;
}

Check url_exactness() {
    Check c;
    // Worked example as printed (without the sentence's closing period).
    const std::string printed =
        "results.uri?src=s&sot=a&s=EXACTSRCTITLE(energy+and+environmental+science)+AND+PUBYEAR+>+2005"
        "&cluster=scoexactsrctitle,\"Energy+And+Environmental+Science\",t";
    const auto url = urls::exact_query_url(normalize_title("Energy & Environmental Science"), 2005);
    c.expect(url == "results/" + printed, "got " + url);
    if (c.ok) c.detail = "byte-exact";
    return c;
}

Check facet_parser(const std::shared_ptr<const Corpus>& corpus) {
    Check c;
    SimulatedPortal portal(corpus);
    const auto ncc = portal.exact_title_query(normalize_title("Nature Climate Change"), 2005);
    const auto h = parse_subject_facet(ncc.facet_html);
    c.expect(h == SubjectAreaHistogram{{"Environmental Science", 2192}, {"Social Sciences", 2192}},
             "NCC facet parsed to " + std::to_string(h.size()) + " areas");
    c.expect(ss_relative_index(h) == 0.5, "NCC index " + text::format_double(ss_relative_index(h)));
    const auto phg = portal.exact_title_query(normalize_title("Progress In Human Geography"), 2005);
    const double phg_index = ss_relative_index(parse_subject_facet(phg.facet_html));
    c.expect(phg_index == 1.0, "PHG index " + text::format_double(phg_index));
    if (c.ok) c.detail = "NCC {SS 2192, Env 2192} -> 0.500; PHG -> 1.000";
    return c;
}

struct PrintedRow {
    int rank;
    const char* title;
    std::uint64_t papers;
    std::uint64_t ss_papers;
    const char* ss_index;  // as printed, decimal comma
    const char* occurrence;
};

// The printed 2018 table.
constexpr PrintedRow kPrintedTable[] = {
    {78, "Nature Climate Change", 2192, 2192, "50 %", "676"},
    {116, "Behavioral And Brain Sciences", 2688, 952, "9,5%", "0"},
    {167, "MMWR-Morbidity And Mortality Weekly Report", 434, 318, "22,9%", "0"},
    {232, "Dialogues In Human Geography", 360, 360, "100,0%", "4"},
    {339, "Review Of Educational Research", 300, 300, "100,0%", "0"},
    {411, "Land Degradation & Development", 1331, 1317, "33,1%", "108"},
    {454, "Progress In Human Geography", 730, 730, "100,0%", "20"},
    {460, "Journal Of Service Research", 358, 356, "33,3%", "0"},
    {467, "Annual Review Of Sociology", 305, 305, "100,0%", "0"},
    {525, "Economic Geography", 242, 242, "50,0%", "3"},
    {535, "Global Environmental Change-Human And Policy Dimensions", 1425, 1307, "47,8%", "632"},
    {570, "Social Issues And Policy Review", 95, 95, "50,0%", "Null"},
    {609, "ISPRS Journal Of Photogrammetry And Remote Sensing", 1588, 275, "4,2%", "41"},
    {622, "Tourism Management", 1998, 1998, "50,0%", "29"},
    {628, "Administrative Science Quarterly", 285, 283, "49,9%", "0"},
};

double printed_percent(std::string s) {
    std::erase(s, '%');
    std::erase(s, ' ');
    std::replace(s.begin(), s.end(), ',', '.');
    return *text::parse_double(s);
}

Check metrics_table(const fs::path& out) {
    Check c;
    int code = -1;
    std::string err;
    const double secs = timed([&] { code = cli_run(plus(fixture_args(out), "metrics"), &err); });
    c.expect(code == 0, "metrics exit code " + std::to_string(code) + ": " + err);
    if (!c.ok) return c;
    const auto rows = parse_metrics_table(slurp(out / kMetricsFile), "metrics");
    c.expect(rows.size() == std::size(kPrintedTable), "rows " + std::to_string(rows.size()) + " != 15");
    for (std::size_t i = 0; c.ok && i < rows.size(); ++i) {
        const auto& got = rows[i];
        const auto& want = kPrintedTable[i];
        const std::string where = std::string(want.title) + ": ";
        c.expect(got.journal.rank == want.rank && got.journal.title == want.title, where + "row order");
        c.expect(got.total_docs == want.papers, where + "papers " + std::to_string(got.total_docs));
        c.expect(got.ss_docs == want.ss_papers, where + "SS papers " + std::to_string(got.ss_docs));
        const double pct = printed_percent(want.ss_index);
        c.expect(std::abs(got.ss_relative_percent - pct) <= kPercentTolerance + 1e-9,
                 where + "SS index " + text::format_double(got.ss_relative_percent));
        const std::string occ = got.keyword_occurrences ? std::to_string(*got.keyword_occurrences) : "Null";
        c.expect(occ == want.occurrence, where + "occurrence " + occ);
    }
    c.expect(secs < kMetricsSeconds, "took " + std::to_string(secs) + " s");
    if (c.ok) c.detail = "15 rows match, " + text::format_fixed(secs, 2) + " s";
    return c;
}

/// Pairwise enumeration straight from the definition, sharing no code with
/// the graph builder.
Check cooccur_oracle() {
    Check c;
    std::mt19937_64 rng(6);
    const auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    for (int round = 0; round < 200 && c.ok; ++round) {
        const int vocab = uni(1, 30);
        std::vector<DocumentRecord> docs(static_cast<std::size_t>(uni(0, 50)));
        for (auto& d : docs) {
            d.source_title = "J";
            d.year = uni(2000, 2022);
            d.subject_areas = {kSocialSciences};
            d.keywords_available = uni(0, 19) != 0;
            if (!d.keywords_available) continue;
            std::set<std::string> kws;
            const int n = uni(0, 8);
            for (int i = 0; i < n; ++i) kws.insert("k" + std::to_string(uni(0, vocab - 1)));
            d.keywords.assign(kws.begin(), kws.end());
            std::shuffle(d.keywords.begin(), d.keywords.end(), rng);
        }
        const YearWindow window{2006, 2018};
        const auto min_occ = static_cast<std::uint64_t>(uni(1, 6));
        const auto g = build_graph(docs, min_occ, window);

        std::map<std::string, std::pair<std::uint64_t, long long>> occ;
        for (const auto& d : docs) {
            if (d.year < window.first || d.year > window.last || !d.keywords_available) continue;
            for (const auto& k : d.keywords) {
                ++occ[k].first;
                occ[k].second += d.year;
            }
        }
        std::vector<std::string> nodes;
        for (const auto& [k, o] : occ) {
            if (o.first >= min_occ) nodes.push_back(k);
        }
        c.expect(g.nodes.size() == nodes.size(), "round " + std::to_string(round) + ": node count");
        std::map<std::string, std::size_t> degree;
        std::size_t edge_count = 0;
        for (std::size_t i = 0; c.ok && i < nodes.size(); ++i) {
            const auto it = g.nodes.find(nodes[i]);
            c.expect(it != g.nodes.end(), "missing node " + nodes[i]);
            if (!c.ok) break;
            const auto& [n, sum] = occ[nodes[i]];
            c.expect(it->second.occurrences == n, "occurrences of " + nodes[i]);
            c.expect(it->second.mean_year == static_cast<double>(sum) / static_cast<double>(n),
                     "mean year of " + nodes[i]);
            for (std::size_t j = i + 1; j < nodes.size(); ++j) {
                std::uint64_t w = 0;
                for (const auto& d : docs) {
                    if (d.year < window.first || d.year > window.last || !d.keywords_available) continue;
                    const auto has = [&](const std::string& k) {
                        return std::find(d.keywords.begin(), d.keywords.end(), k) != d.keywords.end();
                    };
                    w += has(nodes[i]) && has(nodes[j]);
                }
                c.expect(g.weight(nodes[i], nodes[j]) == w, "weight " + nodes[i] + "-" + nodes[j]);
                if (w > 0) {
                    ++edge_count;
                    ++degree[nodes[i]];
                    ++degree[nodes[j]];
                }
            }
        }
        c.expect(g.edges.size() == edge_count, "round " + std::to_string(round) + ": edge count");
        for (const auto& [k, d] : g.degrees()) {
            c.expect(d == (degree.contains(k) ? degree.at(k) : 0), "degree of " + k);
        }
    }
    if (c.ok) c.detail = "200 corpora identical to pairwise enumeration";
    return c;
}

Check graph_anchors(const fs::path& out) {
    Check c;
    // The network the pipeline writes for the highest-ranked listed journal.
    int code = cli_run({"--rank-csv-path", (kData / "jcr_2017_synthetic.csv").string(), "--corpus-path",
                        (kData / "corpus.jsonl").string(), "--output-dir", out.string(), "cooccur", "--journal",
                        "Nature Climate Change"});
    c.expect(code == 0, "cooccur exit code " + std::to_string(code));
    if (!c.ok) return c;
    const auto ncc = read_wordcloud(out / "network_nature-climate-change.tsv");
    const std::string cc = "Climate Change";
    c.expect(ncc.nodes.contains(cc), "NCC graph lacks the keyword");
    if (!c.ok) return c;
    c.expect(ncc.nodes.at(cc).occurrences == 676, "NCC occurrences " + std::to_string(ncc.nodes.at(cc).occurrences));
    c.expect(link_count(ncc, cc) == 491, "NCC links " + std::to_string(link_count(ncc, cc)));

    const auto tm_docs = load_corpus(kData / "tourism_management_snapshot.jsonl").documents;
    const auto tm = build_graph(tm_docs, 5, {2006, 2018});
    c.expect(tm.nodes.contains(cc), "TM graph lacks the keyword");
    if (!c.ok) return c;
    c.expect(tm.nodes.at(cc).occurrences == 31, "TM occurrences " + std::to_string(tm.nodes.at(cc).occurrences));
    c.expect(link_count(tm, cc) == 71, "TM links " + std::to_string(link_count(tm, cc)));
    if (c.ok) c.detail = "NCC 676/491, TM 31/71";
    return c;
}

Check reports(const fs::path& out, const Corpus& corpus) {
    Check c;
    int code = -1;
    std::string err;
    const double secs = timed([&] { code = cli_run(plus(fixture_args(out), "report"), &err); });
    c.expect(code == 0, "report exit code " + std::to_string(code) + ": " + err);
    if (!c.ok) return c;

    const auto counts = [&](const char* file) {
        std::vector<std::pair<std::string, std::uint64_t>> rows;
        auto parsed = csv::parse(slurp(out / file));
        for (std::size_t i = 1; i < parsed.size(); ++i) {
            if (parsed[i].blank()) continue;
            rows.emplace_back(parsed[i].fields.at(0), *text::parse_int<std::uint64_t>(parsed[i].fields.at(1)));
        }
        return rows;
    };
    const auto years = counts("report_per_year.csv");
    std::uint64_t total = 0;
    std::pair<std::string, std::uint64_t> peak{"", 0};
    for (const auto& y : years) {
        total += y.second;
        if (y.second > peak.second) peak = y;
    }
    c.expect(total == 1452, "total " + std::to_string(total));
    c.expect(peak == std::pair<std::string, std::uint64_t>{"2016", 192}, "peak " + peak.first);

    const auto countries = counts("report_per_country.csv");
    const std::vector<std::pair<std::string, std::uint64_t>> head{{"United States", 617}, {"United Kingdom", 432},
                                                                  {"Australia", 221},     {"Germany", 160},
                                                                  {"Netherlands", 135},   {"Canada", 117}};
    c.expect(countries.size() >= 21 && std::equal(head.begin(), head.end(), countries.begin()), "country head list");
    if (countries.size() >= 21) {
        c.expect(countries[20] == std::pair<std::string, std::uint64_t>{"Brazil", 22}, "21st is " + countries[20].first);
    }

    const auto keywords = counts("report_top_keywords.csv");
    const std::vector<std::uint64_t> printed{1452, 219, 194, 181, 171, 170, 149, 141, 123, 112};
    c.expect(keywords.size() >= printed.size(), "too few keywords");
    for (std::size_t i = 0; c.ok && i < printed.size(); ++i) {
        c.expect(keywords[i].second == printed[i], "keyword #" + std::to_string(i + 1) + " " + keywords[i].first);
    }
    c.expect(!keywords.empty() && keywords[0].first == "Climate Change", "first keyword");

    // Social Sciences together with Environmental Science outweighs Social Sciences alone.
    std::vector<std::string> titles;
    for (const auto& row : parse_metrics_table(slurp(out / kMetricsFile), "metrics")) titles.push_back(row.journal.title);
    const auto selected = select_final_set(corpus, titles, "Climate Change", kSocialSciences, {2007, 2018});
    const auto overlap = area_overlap(selected, kSocialSciences, "Environmental Science");
    c.expect(overlap.both > overlap.only_a, "both " + std::to_string(overlap.both) + " <= SS only " +
                                                std::to_string(overlap.only_a));
    c.expect(secs < kReportSeconds, "took " + std::to_string(secs) + " s");
    if (c.ok) {
        c.detail = "1452 docs, peak 2016/192, countries and keywords match, both " + std::to_string(overlap.both) +
                   " > SS only " + std::to_string(overlap.only_a) + ", " + text::format_fixed(secs, 2) + " s";
    }
    return c;
}

class CountingPortal final : public QueryClient {
public:
    explicit CountingPortal(std::shared_ptr<const Corpus> c) : inner_(std::move(c)) {}
    SearchResponse exact_title_query(const NormalizedName& n, int f) override {
        ++calls;
        return inner_.exact_title_query(n, f);
    }
    SearchResponse relaxed_title_query(const NormalizedName& n, int f) override {
        ++calls;
        return inner_.relaxed_title_query(n, f);
    }
    SearchResponse cluster_exact_query(const std::string& t, int f) override {
        ++calls;
        return inner_.cluster_exact_query(t, f);
    }
    std::chrono::milliseconds min_request_delay() const override { return {}; }
    int calls = 0;

private:
    SimulatedPortal inner_;
};

Check invariants() {
    Check c;
    std::mt19937_64 rng(9);
    const auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    const auto title = [&] {
        std::string t;
        const int n = uni(1, 4);
        for (int i = 0; i < n; ++i) {
            t += (t.empty() ? "" : " ") + std::string(1, static_cast<char>('a' + uni(0, 4)));
            if (uni(0, 1)) t += static_cast<char>('a' + uni(0, 4));
        }
        return t;
    };
    const std::vector<std::string> areas{kSocialSciences, "Medicine", "Energy"};

    for (int run = 0; run < 1000 && c.ok; ++run) {
        std::vector<DocumentRecord> docs(static_cast<std::size_t>(uni(0, 25)));
        for (auto& d : docs) {
            d.source_title = title();
            if (uni(0, 1)) d.source_title = render_title_case(normalize_title(d.source_title));
            d.year = uni(2003, 2010);
            d.subject_areas = {areas[static_cast<std::size_t>(uni(0, 2))]};
        }
        std::vector<JournalRecord> ranking;
        for (int i = 0, m = uni(1, 12); i < m; ++i) ranking.push_back({i + 1, title(), 1.0});
        CountingPortal portal(std::make_shared<const Corpus>(docs));
        int previous = 0;
        const auto r = run_filter(ranking, portal, {uni(1, 6), uni(2003, 2009), kSocialSciences},
                                  [&](const SearchOutcome& o) {
                                      c.expect(o.queries_issued <= 3 && portal.calls - previous == o.queries_issued,
                                               "query budget exceeded");
                                      previous = portal.calls;
                                  });
        for (const auto& o : r.outcomes) c.expect(o.tag != Tag::Dismissed, "Dismissed in output");
    }

    std::vector<DocumentRecord> docs(300);
    for (auto& d : docs) {
        d.source_title = "J";
        d.year = uni(2006, 2018);
        d.subject_areas = {kSocialSciences};
        std::set<std::string> kws;
        for (int i = 0, n = uni(0, 6); i < n; ++i) kws.insert("k" + std::to_string(uni(0, 40)));
        d.keywords.assign(kws.begin(), kws.end());
    }
    auto previous = build_graph(docs, 1, {2006, 2018});
    for (std::uint64_t t = 2; t <= 10 && c.ok; ++t) {
        const auto g = build_graph(docs, t, {2006, 2018});
        for (const auto& [k, n] : g.nodes) c.expect(previous.nodes.contains(k), "node appeared at threshold " + std::to_string(t));
        for (const auto& [p, w] : g.edges) c.expect(previous.weight(p.first, p.second) == w, "edge changed");
        previous = g;
    }

    JournalMetrics below, at;
    below.journal = {1, "below", 2.0};
    below.total_docs = 400;
    below.ss_docs = 3;  // 0.75 %
    at.journal = {2, "at", 1.0};
    at.total_docs = 400;
    at.ss_docs = 4;  // 1.00 %
    const auto kept = one_percent_cutoff(std::vector<JournalMetrics>{below, at}, 0.01);
    c.expect(kept.size() == 1 && kept[0].journal.title == "at", "cutoff boundary");
    if (c.ok) c.detail = "1000 cascade runs, thresholds 1..10, 0.75% dropped / 1.00% kept";
    return c;
}

Check determinism(const fs::path& a, const fs::path& b) {
    Check c;
    for (const auto& dir : {a, b}) {
        std::string err;
        const int code = cli_run(plus(fixture_args(dir), "all"), &err);
        c.expect(code == 0, "all exit code " + std::to_string(code) + ": " + err);
    }
    if (!c.ok) return c;
    std::set<std::string> files_a, files_b;
    for (const auto& e : fs::directory_iterator(a)) files_a.insert(e.path().filename().string());
    for (const auto& e : fs::directory_iterator(b)) files_b.insert(e.path().filename().string());
    c.expect(files_a == files_b, "different file sets");
    std::size_t manifests = 0, verified = 0;
    for (const auto& f : files_a) {
        if (f.rfind("manifest-", 0) != 0) continue;
        ++manifests;
        const auto ma = nlohmann::json::parse(slurp(a / f));
        const auto mb = nlohmann::json::parse(slurp(b / f));
        c.expect(ma == mb, f + " differs between runs");
        for (const auto& [name, digest] : ma["outputs"].items()) {
            c.expect(digest.get<std::string>() == sha256_file(a / name), name + " does not match its manifest");
            c.expect(sha256_file(a / name) == sha256_file(b / name), name + " differs between runs");
            ++verified;
        }
    }
    for (const auto& f : files_a) c.expect(slurp(a / f) == slurp(b / f), f + " differs");
    c.expect(manifests >= 4, "expected manifests for every command");
    if (c.ok) {
        c.detail = std::to_string(files_a.size()) + " files identical, " + std::to_string(verified) +
                   " outputs verified against " + std::to_string(manifests) + " manifests";
    }
    return c;
}

}  // namespace

int main() {
    Scratch scratch;
    const auto pipeline_dir = scratch / "pipeline";
    std::shared_ptr<const Corpus> corpus;

    struct Criterion {
        const char* name;
        std::function<Check()> run;
    };
    const std::vector<Criterion> criteria{
        {"cascade regression", [&] { return cascade_regression(pipeline_dir); }},
        {"matching anchors", [] { return matching_anchors(); }},
        {"URL bit-exactness", [] { return url_exactness(); }},
        {"facet parser", [&] {
             corpus = std::make_shared<const Corpus>(load_corpus(kData / "corpus.jsonl").documents);
             return facet_parser(corpus);
         }},
        {"metrics table", [&] { return metrics_table(pipeline_dir); }},
        {"co-occurrence oracle", [] { return cooccur_oracle(); }},
        {"network anchors", [&] { return graph_anchors(pipeline_dir); }},
        {"reports", [&] { return reports(pipeline_dir, *corpus); }},
        {"invariant suites", [] { return invariants(); }},
        {"determinism", [&] { return determinism(scratch / "run_a", scratch / "run_b"); }},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check result;
        try {
            result = criteria[i].run();
        } catch (const std::exception& e) {
            result = {false, std::string("exception: ") + e.what()};
        }
        failures += !result.ok;
        std::cout << (result.ok ? "PASS" : "FAIL") << " [" << (i + 1) << "] " << criteria[i].name << ": "
                  << result.detail << std::endl;
    }
    std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}

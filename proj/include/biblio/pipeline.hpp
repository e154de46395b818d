#pragma once

// End-to-end commands: filter -> metrics -> cooccur -> report. Every command
// reads its inputs from the config and from files written by earlier
// commands in the output directory, and leaves a manifest (config echo plus
// SHA-256 of inputs and outputs) next to its outputs.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "biblio/cooccur.hpp"
#include "biblio/corpus.hpp"
#include "biblio/datasource.hpp"
#include "biblio/digest.hpp"
#include "biblio/error.hpp"
#include "biblio/ingest.hpp"
#include "biblio/live_client.hpp"
#include "biblio/metrics.hpp"
#include "biblio/reports.hpp"
#include "biblio/search.hpp"

namespace biblio {

enum class Mode { Simulated, Live };

struct PipelineConfig {
    std::filesystem::path rank_csv_path;
    std::filesystem::path corpus_path;
    std::filesystem::path output_dir = "out";
    Mode mode = Mode::Simulated;
    int stop_count = 50;
    int year_floor = 2005;
    YearWindow analysis_window{2006, 2018};
    YearWindow final_window{2007, 2018};
    std::uint64_t min_occurrence = 5;
    double cutoff = 0.01;
    std::size_t top_k = 15;
    std::string target_area = kSocialSciences;
    std::string keyword = "Climate Change";
    std::uint64_t seed = 1;

    /// Network maps are built only for journals with more than this many
    /// in-window documents carrying the keyword in the target area.
    std::size_t cooccur_min_docs = 10;
    double resolution = 1.0;
    RankColumns columns;
    LiveClientOptions live;

    void validate() const {
        analysis_window.validate();
        final_window.validate();
        if (stop_count < 1) throw ConfigError("stop-count must be >= 1");
        if (!(cutoff > 0.0 && cutoff <= 1.0)) throw ConfigError("cutoff must be in (0, 1]");
        if (min_occurrence < 1) throw ConfigError("min-occurrence must be >= 1");
        if (!(resolution > 0.0)) throw ConfigError("resolution must be positive");
        if (keyword.empty() || target_area.empty()) throw ConfigError("keyword and target-area must be non-empty");
    }
};

inline constexpr const char* kFilterOutputFile = "filter_output.csv";
inline constexpr const char* kFilterSummaryFile = "filter_summary.txt";
inline constexpr const char* kRunErrorsFile = "run_errors.csv";
inline constexpr const char* kMetricsFile = "metrics.csv";
inline constexpr const char* kLockFile = ".biblio.lock";

/// Exclusive claim on an output directory for the lifetime of the object.
class OutputLock {
public:
    explicit OutputLock(const std::filesystem::path& dir) : path_(dir / kLockFile) {
        std::filesystem::create_directories(dir);
        std::FILE* f = std::fopen(path_.c_str(), "wx");
        if (!f) throw ConfigError("output directory '" + dir.string() + "' is locked by another run (" + path_.string() + ")");
        std::fclose(f);
    }
    ~OutputLock() {
        std::error_code ec;
        std::filesystem::remove(path_, ec);
    }
    OutputLock(const OutputLock&) = delete;
    OutputLock& operator=(const OutputLock&) = delete;

private:
    std::filesystem::path path_;
};

inline std::string journal_slug(std::string_view title) { return text::join(normalize_title(title).words(), "-"); }

struct CommandResult {
    int exit_code = 0;  // 0 ok, 3 transport trouble
    std::vector<std::filesystem::path> outputs;
};

class Pipeline {
public:
    Pipeline(PipelineConfig config, std::ostream& log) : config_(std::move(config)), log_(log) { config_.validate(); }

    const PipelineConfig& config() const noexcept { return config_; }

    /// Runs the search cascade over the ranking and writes the output list.
    CommandResult filter(QueryClient* client_override = nullptr) {
        std::unique_ptr<QueryClient> owned;
        QueryClient* client = client_override;
        if (!client) {
            if (config_.mode == Mode::Live) {
                if (config_.live.base_url.empty()) throw ConfigError("live mode requires --portal-base-url");
                owned = std::make_unique<LiveClient>(config_.live);
            } else {
                owned = std::make_unique<SimulatedPortal>(corpus_ptr());
            }
            client = owned.get();
        }
        const OutputLock lock(config_.output_dir);

        auto ranking = load_ranking();
        std::sort(ranking.begin(), ranking.end(), [](const auto& a, const auto& b) { return a.rank < b.rank; });
        const auto result = run_filter(ranking, *client, {config_.stop_count, config_.year_floor, config_.target_area});

        CommandResult out;
        out.outputs.push_back(write(kFilterOutputFile, format_outcomes_csv(result.outcomes)));
        std::string summary = format_summary(result) + "\n" + "dismissed=" + std::to_string(result.dismissed_count) +
                              ", run_errors=" + std::to_string(result.run_errors.size()) + "\n";
        if (result.abort_reason) summary += "aborted: " + *result.abort_reason + "\n";
        out.outputs.push_back(write(kFilterSummaryFile, summary));
        if (!result.run_errors.empty()) {
            std::string errors = csv::format_row({"journal_name", "jcr_rank", "kind", "message"});
            for (const auto& e : result.run_errors) {
                errors += csv::format_row(
                    {e.journal.title, std::to_string(e.journal.rank), to_string(e.kind), e.message});
            }
            out.outputs.push_back(write(kRunErrorsFile, errors));
        }
        log_ << format_summary(result) << '\n';
        if (result.abort_reason) log_ << "error: run aborted: " << *result.abort_reason << '\n';
        for (const auto& e : result.run_errors) log_ << "error: " << e.journal.title << ": " << e.message << '\n';

        write_manifest("filter", out.outputs, config_.mode == Mode::Simulated);
        out.exit_code = (result.abort_reason || !result.run_errors.empty()) ? 3 : 0;
        return out;
    }

    /// Applies the share cutoff and top-K selection to the filter output.
    CommandResult metrics() {
        const OutputLock lock(config_.output_dir);
        const auto outcomes = read_outcomes_csv(config_.output_dir / kFilterOutputFile);
        const auto& corpus = this->corpus();

        const MetricsOptions options{config_.year_floor, config_.target_area, config_.keyword, config_.analysis_window};
        std::vector<JournalMetrics> candidates;
        for (const auto& o : outcomes) {
            if (o.tag != Tag::Found && o.tag != Tag::ProbablyOK && o.tag != Tag::ProbablyFalse) continue;
            const auto docs = outcome_documents(corpus, o);
            candidates.push_back(compute_journal_metrics(o.journal, docs, options));
        }
        std::vector<std::string> warnings;
        const auto retained = one_percent_cutoff(candidates, config_.cutoff, &warnings);
        const auto top = top_k_by_jif(retained, config_.top_k);
        for (const auto& w : warnings) log_ << "warning: " << w << '\n';
        if (top.empty()) log_ << "warning: no journal passed the cutoff; metrics table is empty\n";

        CommandResult out;
        out.outputs.push_back(write(kMetricsFile, format_metrics_table(top, config_.keyword)));
        log_ << "metrics: " << candidates.size() << " candidates, " << retained.size() << " retained, "
             << top.size() << " listed\n";
        write_manifest("metrics", out.outputs, true);
        return out;
    }

    /// Documents of `journal_title` that qualify it for a network map.
    std::size_t qualifying_documents(std::string_view journal_title) {
        const auto docs = documents_for(journal_title);
        return static_cast<std::size_t>(std::count_if(docs.begin(), docs.end(), [&](const auto* d) {
            return config_.analysis_window.contains(d->year) && has_keyword(*d, config_.keyword) &&
                   has_area(*d, config_.target_area);
        }));
    }

    /// Builds, clusters and exports the keyword network of one listed journal.
    CommandResult cooccur(const std::string& journal_title) {
        const OutputLock lock(config_.output_dir);
        return cooccur_locked(journal_title);
    }

    /// Runs the final selection and writes the aggregate reports.
    CommandResult report() {
        const OutputLock lock(config_.output_dir);
        return report_locked();
    }

    /// filter, metrics, a network map for each qualifying listed journal, report.
    CommandResult all(QueryClient* client_override = nullptr) {
        auto result = filter(client_override);
        if (result.exit_code != 0) return result;
        auto m = metrics();
        result.outputs.insert(result.outputs.end(), m.outputs.begin(), m.outputs.end());
        const OutputLock lock(config_.output_dir);
        for (const auto& row : listed_journals()) {
            if (qualifying_documents(row.journal.title) <= config_.cooccur_min_docs) {
                log_ << "cooccur: skipping " << row.journal.title << " (" << qualifying_documents(row.journal.title)
                     << " qualifying documents)\n";
                continue;
            }
            auto c = cooccur_locked(row.journal.title);
            result.outputs.insert(result.outputs.end(), c.outputs.begin(), c.outputs.end());
        }
        auto r = report_locked();
        result.outputs.insert(result.outputs.end(), r.outputs.begin(), r.outputs.end());
        return result;
    }

    const Corpus& corpus() { return *corpus_ptr(); }

private:
    std::shared_ptr<const Corpus> corpus_ptr() {
        if (!corpus_) {
            if (config_.corpus_path.empty()) throw ConfigError("a corpus file is required (--corpus-path)");
            auto loaded = load_corpus(config_.corpus_path);
            for (const auto& w : loaded.warnings) log_ << "warning: " << w << '\n';
            corpus_ = std::make_shared<const Corpus>(std::move(loaded.documents));
        }
        return corpus_;
    }

    std::vector<JournalRecord> load_ranking() {
        if (config_.rank_csv_path.empty()) throw ConfigError("a ranking file is required (--rank-csv-path)");
        auto parsed = parse_rank_csv(config_.rank_csv_path, config_.columns);
        for (const auto& w : parsed.warnings) log_ << "warning: " << w << '\n';
        return std::move(parsed.records);
    }

    std::vector<MetricsRow> listed_journals() const {
        const auto path = config_.output_dir / kMetricsFile;
        return parse_metrics_table(read_file(path, "metrics table"), path.string());
    }

    /// Portal title of a listed journal: the verbatim matched title when the
    /// cascade recorded one, the journal title otherwise.
    std::string resolved_title(const JournalRecord& journal) const {
        const auto path = config_.output_dir / kFilterOutputFile;
        if (std::filesystem::exists(path)) {
            for (const auto& o : read_outcomes_csv(path)) {
                if (o.journal.rank == journal.rank && o.matched_source_title) return *o.matched_source_title;
            }
        }
        return journal.title;
    }

    std::vector<const DocumentRecord*> documents_for(std::string_view journal_title) {
        const auto rows = listed_journals();
        const auto wanted = normalize_title(journal_title);
        for (const auto& row : rows) {
            if (normalize_title(row.journal.title) == wanted) {
                return journal_documents(corpus(), resolved_title(row.journal));
            }
        }
        throw PreconditionError("journal '" + std::string(journal_title) + "' is not in the metrics table");
    }

    CommandResult cooccur_locked(const std::string& journal_title) {
        const auto docs = documents_for(journal_title);
        const auto qualifying = qualifying_documents(journal_title);
        if (qualifying <= config_.cooccur_min_docs) {
            throw PreconditionError("journal '" + journal_title + "' has " + std::to_string(qualifying) +
                                    " documents with keyword '" + config_.keyword + "' in '" + config_.target_area +
                                    "'; more than " + std::to_string(config_.cooccur_min_docs) + " are required");
        }
        auto graph = build_graph(docs, config_.min_occurrence, config_.analysis_window);
        if (!graph.empty()) graph = cluster_graph(std::move(graph), config_.resolution, config_.seed);

        const auto slug = journal_slug(journal_title);
        CommandResult out;
        out.outputs.push_back(write("network_" + slug + ".tsv", format_wordcloud(graph)));
        log_ << "cooccur: " << journal_title << ": " << graph.nodes.size() << " keywords, " << graph.edges.size()
             << " links\n";
        write_manifest("cooccur-" + slug, out.outputs, true);
        return out;
    }

    CommandResult report_locked() {
        std::vector<std::string> titles;
        for (const auto& row : listed_journals()) titles.push_back(resolved_title(row.journal));
        std::vector<DocumentRecord> selected;
        if (!titles.empty()) {
            selected = select_final_set(corpus(), titles, config_.keyword, config_.target_area, config_.final_window);
        } else {
            log_ << "warning: metrics table is empty; reports will be empty\n";
        }
        const auto bundle = build_reports(selected);
        write_reports(config_.output_dir, bundle);

        CommandResult out;
        for (const auto* f : kReportFiles) out.outputs.push_back(config_.output_dir / f);
        out.outputs.push_back(config_.output_dir / kReportBundleFile);
        log_ << "report: " << selected.size() << " documents selected\n";
        write_manifest("report", out.outputs, true);
        return out;
    }

    std::filesystem::path write(const std::string& name, const std::string& content) {
        const auto path = config_.output_dir / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw DataError("cannot write '" + path.string() + "'");
        out << content;
        if (!out) throw DataError("failed writing '" + path.string() + "'");
        return path;
    }

    nlohmann::ordered_json config_echo() const {
        nlohmann::ordered_json c;
        c["rank_csv_path"] = config_.rank_csv_path.string();
        c["corpus_path"] = config_.corpus_path.string();
        c["mode"] = config_.mode == Mode::Live ? "live" : "simulated";
        c["stop_count"] = config_.stop_count;
        c["year_floor"] = config_.year_floor;
        c["analysis_window"] = {config_.analysis_window.first, config_.analysis_window.last};
        c["final_window"] = {config_.final_window.first, config_.final_window.last};
        c["min_occurrence"] = config_.min_occurrence;
        c["cutoff"] = config_.cutoff;
        c["top_k"] = config_.top_k;
        c["target_area"] = config_.target_area;
        c["keyword"] = config_.keyword;
        c["seed"] = config_.seed;
        c["cooccur_min_docs"] = config_.cooccur_min_docs;
        c["resolution"] = config_.resolution;
        c["columns"] = {config_.columns.rank, config_.columns.title, config_.columns.jif};
        if (config_.mode == Mode::Live) {
            c["portal_base_url"] = config_.live.base_url;
            c["request_delay_ms"] = config_.live.min_delay.count();
            c["max_retries"] = config_.live.max_retries;
        }
        return c;
    }

    /// The output directory itself is not echoed, so identical runs into
    /// different directories produce identical manifests.
    void write_manifest(const std::string& command, const std::vector<std::filesystem::path>& outputs,
                        bool uses_corpus) {
        nlohmann::ordered_json m;
        m["command"] = command;
        m["config"] = config_echo();
        nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
        if (!config_.rank_csv_path.empty() && command == "filter") {
            inputs[config_.rank_csv_path.string()] = sha256_file(config_.rank_csv_path);
        }
        if (uses_corpus && !config_.corpus_path.empty()) inputs[config_.corpus_path.string()] = sha256_file(config_.corpus_path);
        for (const auto* f : {kFilterOutputFile, kMetricsFile}) {
            const auto p = config_.output_dir / f;
            const bool produced = std::find(outputs.begin(), outputs.end(), p) != outputs.end();
            if (!produced && command != "filter" && std::filesystem::exists(p)) inputs[f] = sha256_file(p);
        }
        m["inputs"] = inputs;
        nlohmann::ordered_json outs = nlohmann::ordered_json::object();
        for (const auto& p : outputs) outs[p.filename().string()] = sha256_file(p);
        m["outputs"] = outs;
        write("manifest-" + command + ".json", m.dump(2) + "\n");
    }

    PipelineConfig config_;
    std::ostream& log_;
    std::shared_ptr<const Corpus> corpus_;
};

}  // namespace biblio

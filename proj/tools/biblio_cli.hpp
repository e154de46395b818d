#pragma once

// Command-line front end. Kept in a header so the tests can drive it with
// argument vectors and capture its output.

#include <cstdlib>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "biblio/pipeline.hpp"

namespace biblio::cli {

inline constexpr const char* kOutputDirEnv = "BIBLIO_OUTPUT_DIR";

using EnvLookup = std::function<const char*(const char*)>;

inline YearWindow parse_window(const std::string& s) {
    const auto dash = s.find('-');
    const auto first = text::parse_int<int>(s.substr(0, dash));
    const auto last = dash == std::string::npos ? first : text::parse_int<int>(s.substr(dash + 1));
    if (!first || !last) throw ConfigError("invalid year window '" + s + "' (expected FIRST-LAST)");
    YearWindow w{*first, *last};
    if (w.first > w.last) throw ConfigError("year window '" + s + "' is inverted");
    return w;
}

inline std::string format_window(const YearWindow& w) {
    return std::to_string(w.first) + "-" + std::to_string(w.last);
}

inline bool given_on_command_line(const std::vector<std::string>& args, const std::string& flag) {
    for (const auto& a : args) {
        if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    }
    return false;
}

/// Runs the tool. `args` excludes the program name. Exit codes: 0 success,
/// 1 usage or configuration, 2 data, 3 transport.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err,
               const EnvLookup& getenv = [](const char* name) { return std::getenv(name); }) {
    CLI::App app{"Journal filtering and bibliometric mapping pipeline", "biblio"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Flat key = value file; keys are the long flag names");

    PipelineConfig config;
    std::string rank_csv, corpus, output_dir = config.output_dir.string();
    std::string mode = "simulated";
    std::string analysis_window = format_window(config.analysis_window);
    std::string final_window = format_window(config.final_window);
    int delay_ms = static_cast<int>(config.live.min_delay.count());

    app.add_option("--rank-csv-path", rank_csv, "Journal ranking CSV");
    app.add_option("--corpus-path", corpus, "Document corpus (JSON lines)");
    app.add_option("--output-dir", output_dir, "Output directory (env " + std::string(kOutputDirEnv) + ")")
        ->capture_default_str();
    app.add_option("--mode", mode, "simulated or live")
        ->check(CLI::IsMember({"simulated", "live"}))
        ->capture_default_str();
    app.add_option("--stop-count", config.stop_count, "Output-list size at which filtering stops")
        ->capture_default_str();
    app.add_option("--year-floor", config.year_floor, "Documents must be published after this year")
        ->capture_default_str();
    app.add_option("--analysis-window", analysis_window, "Keyword window FIRST-LAST")->capture_default_str();
    app.add_option("--final-window", final_window, "Report window FIRST-LAST")->capture_default_str();
    app.add_option("--min-occurrence", config.min_occurrence, "Keyword occurrence threshold for networks")
        ->capture_default_str();
    app.add_option("--cutoff", config.cutoff, "Minimum target-area document share")->capture_default_str();
    app.add_option("--top-k", config.top_k, "Journals kept by impact factor")->capture_default_str();
    app.add_option("--target-area", config.target_area, "Subject area of interest")->capture_default_str();
    app.add_option("--keyword", config.keyword, "Keyword of interest")->capture_default_str();
    app.add_option("--seed", config.seed, "Clustering seed")->capture_default_str();
    app.add_option("--cooccur-min-docs", config.cooccur_min_docs,
                   "Networks need more than this many qualifying documents")
        ->capture_default_str();
    app.add_option("--resolution", config.resolution, "Clustering resolution")->capture_default_str();
    app.add_option("--rank-column", config.columns.rank, "Ranking CSV rank column")->capture_default_str();
    app.add_option("--title-column", config.columns.title, "Ranking CSV title column")->capture_default_str();
    app.add_option("--jif-column", config.columns.jif, "Ranking CSV impact factor column")->capture_default_str();
    app.add_option("--portal-base-url", config.live.base_url, "Live mode: portal origin and path prefix");
    app.add_option("--request-delay-ms", delay_ms, "Live mode: minimum delay between requests")
        ->capture_default_str();
    app.add_option("--max-retries", config.live.max_retries, "Live mode: retries per request")
        ->capture_default_str();

    auto* filter = app.add_subcommand("filter", "Classify ranked journals against the portal");
    auto* metrics = app.add_subcommand("metrics", "Build the metrics table from the filter output");
    auto* cooccur = app.add_subcommand("cooccur", "Export one journal's keyword network");
    auto* report = app.add_subcommand("report", "Write the aggregate reports");
    auto* all = app.add_subcommand("all", "filter, metrics, cooccur for each qualifying journal, report");
    std::string journal;
    cooccur->add_option("--journal", journal, "Journal title from the metrics table")->required();
    for (auto* sub : {filter, metrics, cooccur, report, all}) sub->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (!given_on_command_line(args, "--output-dir")) {
            if (const char* env = getenv(kOutputDirEnv); env && *env) output_dir = env;
        }
        config.rank_csv_path = rank_csv;
        config.corpus_path = corpus;
        config.output_dir = output_dir;
        config.mode = mode == "live" ? Mode::Live : Mode::Simulated;
        config.analysis_window = parse_window(analysis_window);
        config.final_window = parse_window(final_window);
        if (delay_ms < 0) throw ConfigError("request-delay-ms must be >= 0");
        config.live.min_delay = std::chrono::milliseconds(delay_ms);

        Pipeline pipeline(config, err);
        CommandResult result;
        if (*filter) {
            result = pipeline.filter();
        } else if (*metrics) {
            result = pipeline.metrics();
        } else if (*cooccur) {
            result = pipeline.cooccur(journal);
        } else if (*report) {
            result = pipeline.report();
        } else {
            result = pipeline.all();
        }
        for (const auto& p : result.outputs) out << p.string() << '\n';
        return result.exit_code;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const TransportError& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace biblio::cli

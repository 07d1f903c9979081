#ifndef SOCIALH_TOOLS_CLI_HPP
#define SOCIALH_TOOLS_CLI_HPP

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "socialh/socialh.hpp"

namespace socialh::cli {

enum ExitCode : int { ok = 0, bad_usage = 1, invalid_input = 2, runtime_failure = 3 };

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

/// Input file, or `in` for "-".
class Input {
public:
    Input(const std::string& path, std::istream& in) {
        if (path == "-") {
            stream_ = &in;
            return;
        }
        file_ = std::make_unique<std::ifstream>(path, std::ios::binary);
        if (!*file_) {
            throw IoError("cannot open '" + path + "' for reading");
        }
        stream_ = file_.get();
    }
    std::istream& stream() { return *stream_; }

private:
    std::unique_ptr<std::ifstream> file_;
    std::istream* stream_ = nullptr;
};

/// Output file, or `out` when no path was given.
class Output {
public:
    Output(const std::string& path, std::ostream& out) {
        if (path.empty() || path == "-") {
            stream_ = &out;
            return;
        }
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
        if (!*file_) {
            throw IoError("cannot open '" + path + "' for writing");
        }
        stream_ = file_.get();
    }
    std::ostream& stream() { return *stream_; }
    void close() {
        stream_->flush();
        if (!*stream_) {
            throw IoError("write failed");
        }
    }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_ = nullptr;
};

inline AsOf as_of_from(const std::optional<Year>& y) { return y ? AsOf(*y) : unbounded; }

} // namespace detail

/// Runs one subcommand. Data goes to the -o file or `out`; diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
               std::ostream& err) {
    CLI::App app{"Social h-index toolkit: corpus validation, metrics, collaboration styles, "
                 "citation-growth simulation and reports"};
    app.name("socialh");
    app.require_subcommand(1, 1);
    app.fallthrough();

    unsigned threads = 0;
    app.add_option("--threads", threads, "Worker threads for per-author work (0 = all cores)")
        ->check(CLI::NonNegativeNumber);

    std::string input;
    std::string output;
    std::optional<Year> as_of;
    Count min_h = 10;

    auto* validate_cmd = app.add_subcommand("validate", "Check a corpus file against its invariants");
    validate_cmd->add_option("corpus", input, "Corpus file ('-' for stdin)")->required();
    validate_cmd->add_option("-o,--output", output, "Violation list destination");

    auto* metrics_cmd = app.add_subcommand("metrics", "Per-author h, soc_h and count metrics");
    metrics_cmd->add_option("corpus", input, "Corpus file ('-' for stdin)")->required();
    metrics_cmd->add_option("--as-of", as_of, "Evaluate the snapshot at the end of this year");
    metrics_cmd->add_option("-o,--output", output, "CSV destination");

    auto* classify_cmd = app.add_subcommand("classify", "Elitist / mentor classification");
    classify_cmd->add_option("corpus", input, "Corpus file ('-' for stdin)")->required();
    classify_cmd->add_option("--min-h", min_h, "Only authors with at least this h")
        ->check(CLI::NonNegativeNumber);
    classify_cmd->add_option("-o,--output", output, "CSV destination");

    std::string author;
    std::string metric_name;
    Year from = 0;
    Year to = 0;
    auto* traj_cmd = app.add_subcommand("trajectory", "Yearly metric series for one author");
    traj_cmd->add_option("corpus", input, "Corpus file ('-' for stdin)")->required();
    traj_cmd->add_option("--author", author, "Author id")->required();
    traj_cmd->add_option("--metric", metric_name, "h, soc_h or count")
        ->required()
        ->check(CLI::IsMember({"h", "soc_h", "count"}));
    traj_cmd->add_option("--from", from, "First year")->required();
    traj_cmd->add_option("--to", to, "Last year")->required();
    traj_cmd->add_option("-o,--output", output, "CSV destination");

    int years = 0;
    PeakDecayModel model;
    auto* sim_cmd = app.add_subcommand("simulate", "Simulate citation growth on a collaboration graph");
    sim_cmd->add_option("graph", input, "Graph file ('-' for stdin)")->required();
    sim_cmd->add_option("--years", years, "Simulated years")->required()->check(CLI::PositiveNumber);
    sim_cmd->add_option("--peak", model.peak_offset, "Years from publication to the citation peak")
        ->capture_default_str();
    sim_cmd->add_option("--end", model.end_offset, "Years from publication until citations stop")
        ->capture_default_str();
    sim_cmd->add_option("-o,--output", output, "Corpus destination");

    std::string kind;
    double bin_width = 5.0;
    std::string x_name = "h";
    std::string y_name = "soc_h";
    std::size_t k = 15;
    std::string sidecar;
    auto* report_cmd = app.add_subcommand("report", "Histograms, scatter data, top-k tables, statistics");
    report_cmd->add_option("corpus", input, "Corpus file ('-' for stdin)")->required();
    report_cmd->add_option("--kind", kind, "hist, scatter, topk or stats")
        ->required()
        ->check(CLI::IsMember({"hist", "scatter", "topk", "stats"}));
    report_cmd->add_option("--as-of", as_of, "Snapshot year for scatter and topk");
    report_cmd->add_option("--min-h", min_h, "Group filter for hist")->check(CLI::NonNegativeNumber);
    report_cmd->add_option("--bin-width", bin_width, "Histogram bin width")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    const std::vector<std::string> measures{"h", "soc_h", "count", "citations", "coauthors"};
    report_cmd->add_option("--x", x_name, "Scatter x measure")->check(CLI::IsMember(measures));
    report_cmd->add_option("--y", y_name, "Scatter y measure")->check(CLI::IsMember(measures));
    report_cmd->add_option("-k", k, "Rows in the top-k table")->check(CLI::PositiveNumber);
    report_cmd->add_option("--sidecar", sidecar,
                           "Spearman sidecar path (default: <output>.spearman, else stderr)");
    report_cmd->add_option("-o,--output", output, "CSV destination");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : bad_usage;
    }

    try {
        if (*validate_cmd) {
            detail::Input src(input, in);
            Corpus corpus = load_corpus(src.stream(), LoadMode::lenient);
            const auto violations = validate(corpus);
            detail::Output dst(output, out);
            for (const Violation& v : violations) {
                dst.stream() << (v.paper.empty() ? "<corpus>" : v.paper) << ": " << v.message
                             << '\n';
            }
            dst.close();
            err << corpus.paper_count() << " papers, " << corpus.author_count() << " authors, "
                << violations.size() << " violations\n";
            return violations.empty() ? ok : invalid_input;
        }

        if (*sim_cmd) {
            detail::Input src(input, in);
            const CollabGraph graph = read_graph(src.stream());
            if (model.peak_offset < 1 || model.end_offset <= model.peak_offset) {
                err << "error: need 1 <= --peak < --end\n";
                return bad_usage;
            }
            const Corpus corpus = run_simulation(graph, years, model);
            detail::Output dst(output, out);
            write_corpus(dst.stream(), corpus);
            dst.close();
            err << "simulated " << corpus.paper_count() << " papers over " << years << " years\n";
            return ok;
        }

        detail::Input src(input, in);
        const Corpus corpus = load_corpus(src.stream());
        err << "loaded " << corpus.paper_count() << " papers, " << corpus.author_count()
            << " authors\n";

        if (*metrics_cmd) {
            const MetricsTable table = all_metrics(corpus, detail::as_of_from(as_of), threads);
            detail::Output dst(output, out);
            write_metrics_csv(dst.stream(), table);
            dst.close();
            err << "conservation_residual=" << to_fraction_string(conservation_residual(table))
                << '\n';
            return ok;
        }

        if (*classify_cmd) {
            const auto rows = classify_authors(corpus, min_h, threads);
            detail::Output dst(output, out);
            write_classification_csv(dst.stream(), rows);
            dst.close();
            return ok;
        }

        if (*traj_cmd) {
            if (from > to) {
                err << "error: --from must not exceed --to\n";
                return bad_usage;
            }
            const TrajectoryMetric metric = metric_name == "h"       ? TrajectoryMetric::h
                                            : metric_name == "soc_h" ? TrajectoryMetric::soc_h
                                                                     : TrajectoryMetric::count;
            const auto a = corpus.find_author(author);
            if (!a) {
                err << "error: unknown author '" << author << "'\n";
                return bad_usage;
            }
            const Trajectory t = trajectory(corpus, *a, metric, from, to);
            detail::Output dst(output, out);
            write_trajectory_csv(dst.stream(), t);
            dst.close();
            return ok;
        }

        if (*report_cmd) {
            detail::Output dst(output, out);
            if (kind == "hist") {
                write_histograms_csv(dst.stream(),
                                     group_histograms(corpus, min_h, bin_width, threads));
            } else if (kind == "scatter") {
                const Scatter s = scatter(all_metrics(corpus, detail::as_of_from(as_of), threads),
                                          parse_measure(x_name), parse_measure(y_name));
                write_scatter_csv(dst.stream(), s);
                if (sidecar.empty() && !output.empty() && output != "-") {
                    sidecar = output + ".spearman";
                }
                if (sidecar.empty()) {
                    write_spearman_sidecar(err, s);
                } else {
                    detail::Output side(sidecar, out);
                    write_spearman_sidecar(side.stream(), s);
                    side.close();
                }
            } else if (kind == "topk") {
                write_topk_csv(dst.stream(),
                               top_k(all_metrics(corpus, detail::as_of_from(as_of), threads), k));
            } else {
                write_stats_csv(dst.stream(), h_core_inflation_stats(corpus, threads));
            }
            dst.close();
            return ok;
        }
    } catch (const CorpusError& e) {
        err << "invalid corpus: " << e.what() << '\n';
        return invalid_input;
    } catch (const GraphError& e) {
        err << "invalid graph: " << e.what() << '\n';
        return invalid_input;
    } catch (const UndatedCitations& e) {
        err << "invalid input: " << e.what() << '\n';
        return invalid_input;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return runtime_failure;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return bad_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return runtime_failure;
    }
    return bad_usage;
}

} // namespace socialh::cli

#endif // SOCIALH_TOOLS_CLI_HPP

// Command-line front end. Talks to the analyzer exclusively through the
// shared library's C API (ifacelint.h).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ifacelint.h"

namespace {

struct OptionsHandle {
    iflint_options* ptr = iflint_options_new();
    ~OptionsHandle() { iflint_options_free(ptr); }
};

struct ResultHandle {
    iflint_result* ptr = nullptr;
    ~ResultHandle() { iflint_result_free(ptr); }
};

int fail_usage(const std::string& message, const CLI::App& app) {
    std::cerr << "error: " << message << "\n\n" << app.help() << std::flush;
    return 2;
}

bool parse_fail_on(const std::string& spec, std::string& metric, double& threshold) {
    auto colon = spec.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= spec.size()) {
        return false;
    }
    metric = spec.substr(0, colon);
    try {
        std::size_t used = 0;
        threshold = std::stod(spec.substr(colon + 1), &used);
        if (used != spec.size() - colon - 1) return false;
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ifacelint - interface design anomaly analyzer"};
    app.require_subcommand(1);

    auto* analyze = app.add_subcommand(
        "analyze", "Detect duplicate and unused interface methods and report "
                   "the metric suite");

    std::string source_dir, facts_file, format = "text", out_path;
    std::string correlation = "both", sort_key = "rum";
    bool no_exclude_tests = false, include_markers = false, library_mode = false;
    int min_impl = 1;
    std::vector<std::string> fail_on;

    auto* source_opt =
        analyze->add_option("--source", source_dir, "Directory of .java sources");
    auto* facts_opt =
        analyze->add_option("--facts", facts_file, "Facts file (one record per line)");
    source_opt->excludes(facts_opt);
    analyze->add_option("--format", format, "Output format: text|csv|machine")
        ->check(CLI::IsMember({"text", "csv", "machine"}));
    analyze->add_option("--out", out_path, "Write the report to a file");
    analyze->add_flag("--no-exclude-tests", no_exclude_tests,
                      "Keep test classes and interfaces");
    analyze->add_flag("--include-markers", include_markers,
                      "Keep interfaces without methods");
    analyze->add_option("--min-impl", min_impl,
                        "Implementing classes required for the unused analysis")
        ->check(CLI::NonNegativeNumber);
    analyze->add_flag("--library-mode", library_mode,
                      "Report unused methods as possible external API");
    analyze->add_option("--correlation", correlation,
                        "Coefficients to display: pearson|spearman|both")
        ->check(CLI::IsMember({"pearson", "spearman", "both"}));
    analyze->add_option("--sort-key", sort_key,
                        "Worst-first ranking key: rum|rdm|size|dm|um|iuc|name")
        ->check(CLI::IsMember({"rum", "rdm", "size", "dm", "um", "iuc", "name"}));
    analyze
        ->add_option("--fail-on", fail_on,
                     "metric:threshold pairs over rsdm|rsum|rsnum|rreim|rum|rdm; "
                     "exit 1 when a metric reaches its threshold")
        ->take_all();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help() << std::flush;
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help() << std::flush;
        return 2;
    }

    if (source_dir.empty() && facts_file.empty()) {
        return fail_usage("one of --source or --facts is required", app);
    }

    OptionsHandle options;
    if (!options.ptr) {
        std::cerr << "error: out of memory" << std::endl;
        return 2;
    }
    iflint_options_set_exclude_tests(options.ptr, no_exclude_tests ? 0 : 1);
    iflint_options_set_exclude_markers(options.ptr, include_markers ? 0 : 1);
    iflint_options_set_min_implementations(options.ptr, min_impl);
    iflint_options_set_library_mode(options.ptr, library_mode ? 1 : 0);
    iflint_options_set_correlation(options.ptr, correlation.c_str());
    iflint_options_set_sort_key(options.ptr, sort_key.c_str());

    // validate fail-on specs before running
    std::vector<std::pair<std::string, double>> gates;
    for (const auto& spec : fail_on) {
        std::string metric;
        double threshold = 0.0;
        if (!parse_fail_on(spec, metric, threshold)) {
            return fail_usage("bad --fail-on value '" + spec +
                                  "', expected metric:threshold",
                              app);
        }
        gates.emplace_back(metric, threshold);
    }

    ResultHandle result;
    iflint_status status =
        source_dir.empty()
            ? iflint_analyze_facts(facts_file.c_str(), options.ptr, &result.ptr)
            : iflint_analyze_source(source_dir.c_str(), options.ptr, &result.ptr);
    if (status != IFLINT_OK) {
        std::cerr << "error (" << iflint_status_name(status)
                  << "): " << iflint_last_error() << std::endl;
        return 2;
    }

    char* document = nullptr;
    status = iflint_result_render(result.ptr, format.c_str(), &document);
    if (status != IFLINT_OK) {
        std::cerr << "error (" << iflint_status_name(status)
                  << "): " << iflint_last_error() << std::endl;
        return 2;
    }
    std::unique_ptr<char, void (*)(char*)> document_guard(document,
                                                          iflint_string_free);

    if (out_path.empty()) {
        std::cout << document << std::flush;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << out_path << std::endl;
            return 2;
        }
        out << document;
    }

    for (const auto& [metric, threshold] : gates) {
        int flag = 0;
        status = iflint_result_threshold_exceeded(result.ptr, metric.c_str(),
                                                  threshold, &flag);
        if (status != IFLINT_OK) {
            std::cerr << "error (" << iflint_status_name(status)
                      << "): " << iflint_last_error() << std::endl;
            return 2;
        }
        if (flag) {
            std::cerr << "fail-on: " << metric << " reached " << threshold
                      << std::endl;
            return 1;
        }
    }
    return 0;
}

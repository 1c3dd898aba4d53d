#include "ifacelint/facts.hpp"
#include "ifacelint/report.hpp"
#include "ifacelint/source_parser.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ifacelint {

namespace {

double sort_rank(const std::optional<double>& value, double fallback) {
    return value ? *value : fallback;
}

void sort_worst_first(std::vector<InterfaceMetrics>& interfaces,
                      const std::string& key) {
    auto by = [&](const InterfaceMetrics& a, const InterfaceMetrics& b) {
        auto tail = [](const InterfaceMetrics& m) {
            return std::tuple(-sort_rank(m.rum, -1.0), -m.rdm, -m.size, m.iface);
        };
        if (key == "rdm") {
            return std::tuple(-a.rdm, tail(a)) < std::tuple(-b.rdm, tail(b));
        }
        if (key == "size") {
            return std::tuple(-a.size, a.iface) < std::tuple(-b.size, b.iface);
        }
        if (key == "dm") {
            return std::tuple(-a.dm, tail(a)) < std::tuple(-b.dm, tail(b));
        }
        if (key == "um") {
            return std::tuple(-sort_rank(a.um ? std::optional<double>(*a.um) : std::nullopt, -1.0),
                              tail(a)) <
                   std::tuple(-sort_rank(b.um ? std::optional<double>(*b.um) : std::nullopt, -1.0),
                              tail(b));
        }
        if (key == "iuc") { // low cohesion first; undefined last
            return std::tuple(sort_rank(a.iuc, 2.0), a.iface) <
                   std::tuple(sort_rank(b.iuc, 2.0), b.iface);
        }
        if (key == "name") return a.iface < b.iface;
        return tail(a) < tail(b); // default: rum, then rdm, then size
    };
    std::stable_sort(interfaces.begin(), interfaces.end(), by);
}

void check(bool condition, const char* what) {
    if (!condition) {
        throw Error(ErrorKind::Internal,
                    std::string("internal consistency check failed: ") + what);
    }
}

// Re-assert the cross-module invariants before a result leaves the pipeline.
void validate(const AnalysisResult& result) {
    long sdm = 0, sum = 0, snum = 0, total = 0;
    for (const auto& m : result.interfaces) {
        total += m.size;
        sdm += m.dm;
        check(m.dm <= m.size, "dm <= size");
        check(m.rdm >= 0.0 && m.rdm <= 1.0, "rdm in [0,1]");
        if (m.um) {
            sum += *m.um;
            check(m.num.has_value(), "um and num defined together");
            check(*m.num <= *m.um, "num <= um");
            check(*m.um <= m.size, "um <= size");
            check(m.rum && *m.rum >= 0.0 && *m.rum <= 1.0, "rum in [0,1]");
        }
        if (m.num) snum += *m.num;
        check(m.iuc.has_value() == (m.client_count > 0), "iuc defined iff clients");
        if (m.iuc) check(*m.iuc >= 0.0 && *m.iuc <= 1.0, "iuc in [0,1]");
    }
    check(total == result.system.total_interface_methods, "sum of size");
    check(sdm == result.system.sdm, "sum of dm");
    check(sum == result.system.sum, "sum of um");
    check(snum == result.system.snum, "sum of num");
    check(result.system.reim ==
              result.system.sdm - result.system.distinct_dup_signatures,
          "reim identity");
    check(result.system.reim >= 0, "reim >= 0");
    check(result.system.snum <= result.system.sum, "snum <= sum");

    long group_members = 0;
    for (const auto& group : result.anomalies.clone_groups) {
        check(group.interfaces.size() >= 2, "clone group spans interfaces");
        group_members += static_cast<long>(group.interfaces.size());
    }
    check(group_members == result.system.sdm, "group members equal sdm");

    for (const auto& [iface, never] : result.anomalies.usage.never_used) {
        auto unused = result.anomalies.usage.unused.find(iface);
        check(unused != result.anomalies.usage.unused.end() &&
                  std::includes(unused->second.begin(), unused->second.end(),
                                never.begin(), never.end()),
              "never_used within unused");
    }

    long loc_savings = 0;
    for (const auto& s : result.suggestions) {
        if (s.kind == SuggestionKind::RemoveUnusedDeclaration) {
            loc_savings += s.savings.loc_savings;
        }
    }
    check(loc_savings == result.system.nulc, "loc savings add up to nulc");
}

} // namespace

AnalysisResult analyze_model(const CodeModel& model, const AnalysisOptions& options,
                             Provenance provenance) {
    FilteredModel filtered = apply_filters(model, options.filters);
    AnomalySet anomalies = detect_anomalies(filtered);
    std::vector<InterfaceMetrics> per_interface =
        interface_metrics(filtered, anomalies);

    AnalysisResult result;
    result.correlations = correlate(per_interface);
    result.system = system_metrics(filtered, anomalies, per_interface);
    result.suggestions = suggest(filtered, anomalies);
    result.anomalies = std::move(anomalies);
    provenance.filters = options.filters;
    provenance.correlation_display = options.correlation_display;
    provenance.sort_key = options.sort_key;
    result.provenance = std::move(provenance);
    result.interfaces = std::move(per_interface);
    sort_worst_first(result.interfaces, options.sort_key);

    validate(result);
    return result;
}

AnalysisResult run_analysis_source(const std::filesystem::path& dir,
                                   const AnalysisOptions& options) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
        throw Error(ErrorKind::Input, "not a readable directory: " + dir.string());
    }
    std::vector<SourceFile> files;
    for (auto it = fs::recursive_directory_iterator(dir, ec);
         it != fs::recursive_directory_iterator(); ++it) {
        if (!it->is_regular_file()) continue;
        if (it->path().extension() != ".java") continue;
        std::ifstream in(it->path(), std::ios::binary);
        if (!in) {
            throw Error(ErrorKind::Input, "unreadable file: " + it->path().string());
        }
        std::ostringstream text;
        text << in.rdbuf();
        files.push_back({it->path().lexically_relative(dir).generic_string(),
                         std::move(text).str()});
    }
    if (ec) {
        throw Error(ErrorKind::Input, "cannot walk directory: " + dir.string());
    }

    const long file_count = static_cast<long>(files.size());
    ParseResult parsed = parse_source(std::move(files));
    CodeModel model =
        CodeModel::build(std::move(parsed.interfaces), std::move(parsed.classes),
                         std::move(parsed.calls), parsed.system_loc);

    Provenance provenance;
    provenance.frontend = "source";
    provenance.files = file_count;
    provenance.parse_errors = parsed.error_count();
    provenance.parse_warnings = parsed.warning_count();
    provenance.model_warnings = model.warnings().total();
    return analyze_model(model, options, std::move(provenance));
}

AnalysisResult run_analysis_facts(const std::filesystem::path& file,
                                  const AnalysisOptions& options) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::Input, "unreadable facts file: " + file.string());
    }
    FactsResult facts = parse_facts(in, file.filename().string());
    long violations = static_cast<long>(facts.diagnostics.size());
    if (violations > options.schema_error_limit) {
        const ParseDiagnostic& first = facts.diagnostics.front();
        throw Error(ErrorKind::SchemaViolation,
                    first.path + ":" + std::to_string(first.line) + ": " +
                        first.message +
                        (violations > 1
                             ? " (+" + std::to_string(violations - 1) + " more)"
                             : ""));
    }
    CodeModel model =
        CodeModel::build(std::move(facts.interfaces), std::move(facts.classes),
                         std::move(facts.calls), facts.system_loc);

    Provenance provenance;
    provenance.frontend = "facts";
    provenance.files = 1;
    provenance.parse_errors = violations;
    provenance.model_warnings = model.warnings().total();
    return analyze_model(model, options, std::move(provenance));
}

bool threshold_exceeded(const AnalysisResult& result, const std::string& metric,
                        double threshold) {
    if (metric == "rsdm") return result.system.rsdm >= threshold;
    if (metric == "rsum") return result.system.rsum >= threshold;
    if (metric == "rsnum") return result.system.rsnum >= threshold;
    if (metric == "rreim") return result.system.rreim >= threshold;
    if (metric == "rum") {
        for (const auto& m : result.interfaces) {
            if (m.rum && *m.rum >= threshold) return true;
        }
        return false;
    }
    if (metric == "rdm") {
        for (const auto& m : result.interfaces) {
            if (m.rdm >= threshold) return true;
        }
        return false;
    }
    throw Error(ErrorKind::Usage, "unknown fail-on metric: " + metric);
}

} // namespace ifacelint

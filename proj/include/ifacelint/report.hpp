#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "ifacelint/anomalies.hpp"
#include "ifacelint/metrics.hpp"
#include "ifacelint/model.hpp"

namespace ifacelint {

enum class SuggestionKind {
    MergeDuplicateInterface,
    ExtractSharedSuperInterface,
    RemoveRedeclarationInSubInterface,
    RemoveUnusedDeclaration,
    DemoteInternalOnlyMethod,
};

const char* suggestion_kind_name(SuggestionKind kind);

struct SavingsEstimate {
    int declarations_removed = 0;
    int implementation_methods_removable = 0;
    long loc_savings = 0;

    friend bool operator==(const SavingsEstimate&, const SavingsEstimate&) = default;
};

struct RefactoringSuggestion {
    SuggestionKind kind = SuggestionKind::RemoveUnusedDeclaration;
    // kind-specific roles, all qualified names / signature texts:
    //   merge:    keep_interface, drop_interface, signatures = shared set
    //   extract:  target_interfaces = holders, signatures = extracted set,
    //             new_interface = synthesized name
    //   redecl:   target_interfaces = {sub, ancestor}, signatures = dropped
    //   unused:   target_interfaces = {iface}, signatures = {decl},
    //             removable_methods = claimed concrete methods
    //   demote:   target_interfaces = {iface}, signatures = {decl}
    std::vector<std::string> target_interfaces;
    std::vector<std::string> signatures;
    std::string new_interface;
    std::vector<MethodRef> removable_methods;
    SavingsEstimate savings;
    std::string narrative;

    friend bool operator==(const RefactoringSuggestion&, const RefactoringSuggestion&) = default;
};

/// Suggestion catalog over a detected anomaly set. Remove-unused targets are
/// re-verified against the model (zero reaching calls) at generation time;
/// each removable concrete method is claimed by exactly one suggestion so
/// loc savings add up to the system NULC.
std::vector<RefactoringSuggestion> suggest(const FilteredModel& filtered,
                                           const AnomalySet& anomalies);

/// Simulate the suggestions on a copy of the model (no source rewriting):
/// merges delete an interface and re-point its dependents, extractions move
/// shared signatures into a synthesized super-interface, removals drop
/// declarations and claimed concrete methods.
CodeModel apply_suggestions(const CodeModel& model,
                            const std::vector<RefactoringSuggestion>& suggestions);

struct Provenance {
    std::string frontend; // "source" or "facts"
    FilterConfig filters;
    std::string correlation_display = "both"; // pearson|spearman|both
    std::string sort_key = "rum";
    long parse_errors = 0;
    long parse_warnings = 0;
    long model_warnings = 0;
    long files = 0;

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct AnalysisResult {
    SystemMetrics system;
    std::vector<InterfaceMetrics> interfaces; // worst-first per sort_key
    AnomalySet anomalies;
    CorrelationReport correlations;
    std::vector<RefactoringSuggestion> suggestions;
    Provenance provenance;
};

struct AnalysisOptions {
    FilterConfig filters;
    std::string correlation_display = "both";
    std::string sort_key = "rum"; // rum|rdm|size|dm|um|iuc|name
    long schema_error_limit = 0;  // facts violations tolerated before failing
};

/// Full pipeline over an already built model.
AnalysisResult analyze_model(const CodeModel& model, const AnalysisOptions& options,
                             Provenance provenance);

/// Walk `dir` for .java files (path order), parse, build, analyze.
AnalysisResult run_analysis_source(const std::filesystem::path& dir,
                                   const AnalysisOptions& options);

/// Read a facts file, build, analyze.
AnalysisResult run_analysis_facts(const std::filesystem::path& file,
                                  const AnalysisOptions& options);

enum class RenderFormat { Text, Csv, Machine };

/// Deterministic rendering. Text: ranked tables with system ratios as
/// percentages. Csv: fixed 9-column layout (header
/// `interface,size,dm,rdm,um,rum,num,iuc,clients`), one row per interface,
/// a `system` row and a `correlations` row; undefined cells read `NA`.
/// Machine: JSON dump with stable keys and ordering.
std::string render(const AnalysisResult& result, RenderFormat format);

/// Rebuild an AnalysisResult from the machine-readable rendering.
AnalysisResult parse_machine(const std::string& document);

/// CI gate: system metrics (rsdm, rsum, rsnum, rreim) compare directly;
/// per-interface metrics (rum, rdm) trigger when any interface reaches the
/// threshold. Throws Error(Usage) for unknown metric names.
bool threshold_exceeded(const AnalysisResult& result, const std::string& metric,
                        double threshold);

} // namespace ifacelint

#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ifacelint/model.hpp"

namespace ifacelint {

struct FilterConfig {
    bool exclude_tests = true;
    bool exclude_markers = true;
    int min_implementations = 1; // unused-method analysis only
    bool treat_as_library = false; // reporting hint, never changes numbers

    friend bool operator==(const FilterConfig&, const FilterConfig&) = default;
};

/// A model restricted per the corpus filters, plus the interfaces exempted
/// from the unused-method analysis (fewer implementing classes than
/// min_implementations). Exempt interfaces still take part in duplication.
struct FilteredModel {
    CodeModel model;
    std::set<std::string> unused_exempt;
    FilterConfig config;

    /// Wrap a model without excluding anything (still applies the
    /// min_implementations exemption).
    static FilteredModel passthrough(CodeModel model, FilterConfig config = {
                                         .exclude_tests = false,
                                         .exclude_markers = false,
                                         .min_implementations = 1,
                                         .treat_as_library = false});
};

/// Drop test classes/interfaces (flagged ones, plus interfaces whose every
/// implementation is a test class), marker interfaces (zero declared
/// methods), edges and call records touching excluded types; compute the
/// min_implementations exemption on what remains.
FilteredModel apply_filters(const CodeModel& model, const FilterConfig& config);

/// All declarations of one signature across >= 2 distinct interfaces.
struct CloneGroup {
    MethodSignature signature;
    std::vector<std::string> interfaces; // sorted qualified names, >= 2
    bool hierarchy_related = false;      // some member pair is extends-related

    friend bool operator==(const CloneGroup&, const CloneGroup&) = default;
};

/// Group interface method declarations by canonical signature; one group per
/// signature declared in at least two interfaces, sorted by signature text.
std::vector<CloneGroup> find_clone_groups(const CodeModel& model);

/// Ordered pairs (i, i_x): every method of i has an equal-signature
/// counterpart in i_x. Identical interfaces yield both orderings. Interfaces
/// without methods never pair.
std::vector<std::pair<std::string, std::string>> find_duplicate_interfaces(
    const CodeModel& model, const std::vector<CloneGroup>& groups);

/// Unused-method maps keyed by interface qualified name; values are
/// signature texts. never_used(i) is always a subset of unused(i);
/// internal_only(i) = unused(i) minus never_used(i).
struct UnusedReport {
    std::map<std::string, std::set<std::string>> unused;
    std::map<std::string, std::set<std::string>> never_used;
    std::map<std::string, std::set<std::string>> internal_only;
};

/// For each non-exempt interface i and declaration d: d is unused iff no
/// call from a class outside implementations(i) reaches (i, d); d is
/// never-used iff no call from any class reaches it.
UnusedReport find_unused(const FilteredModel& filtered);

struct AnomalySet {
    std::vector<CloneGroup> clone_groups;
    std::vector<std::pair<std::string, std::string>> duplicate_interface_pairs;
    UnusedReport usage;
};

/// Run both detectors over an already-filtered model.
AnomalySet detect_anomalies(const FilteredModel& filtered);

} // namespace ifacelint

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ifacelint/anomalies.hpp"
#include "ifacelint/model.hpp"

namespace ifacelint {

/// Per-interface record. um/num/rum are absent for interfaces exempted from
/// the unused analysis; iuc is absent when the interface has no clients.
struct InterfaceMetrics {
    std::string iface;
    int size = 0;
    int dm = 0;
    std::optional<int> um;
    std::optional<int> num;
    double rdm = 0.0;
    std::optional<double> rum;
    std::optional<double> iuc;
    int client_count = 0;

    friend bool operator==(const InterfaceMetrics&, const InterfaceMetrics&) = default;
};

struct SystemMetrics {
    long interfaces = 0;              // retained after filtering
    long total_interface_methods = 0; // sum of size(i)
    long sdm = 0;
    long sum = 0;  // unused
    long snum = 0; // never used
    long distinct_dup_signatures = 0;
    long reim = 0; // sdm - distinct_dup_signatures
    long nulc = 0; // loc of concrete methods overriding only never-used decls
    long shared_impl_count = 0;
    long dup_impl_count = 0; // concrete methods overriding any duplicate decl
    long system_loc = 0;
    double rsdm = 0.0;
    double rsum = 0.0;
    double rsnum = 0.0;
    double rreim = 0.0;
    double rnulc = 0.0;
    double shared_impl_ratio = 0.0;

    friend bool operator==(const SystemMetrics&, const SystemMetrics&) = default;
};

/// Mean over clients(iface) of (methods the client reaches) / size(iface);
/// absent when the interface has no clients. Throws Error(UnknownType).
std::optional<double> iuc(const CodeModel& model, const std::string& iface);

/// One record per retained interface, ascending by qualified name.
std::vector<InterfaceMetrics> interface_metrics(const FilteredModel& filtered,
                                                const AnomalySet& anomalies);

/// System aggregates. Ratios with a zero denominator are 0. A concrete
/// method counts once toward nulc even when it overrides several never-used
/// declarations; shared_impl_count counts concrete methods overriding
/// duplicate declarations from at least two distinct interfaces.
SystemMetrics system_metrics(const FilteredModel& filtered,
                             const AnomalySet& anomalies,
                             const std::vector<InterfaceMetrics>& per_interface);

/// Product-moment coefficient; absent when n < 2 or either variance is 0.
/// Throws Error(LengthMismatch).
std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys);

/// Pearson over fractional ranks (ties get the mean rank).
std::optional<double> spearman(std::span<const double> xs, std::span<const double> ys);

/// Mean ranks, 1-based; ties share the average of their positions.
std::vector<double> fractional_ranks(std::span<const double> values);

struct CorrelationEntry {
    std::string pairing; // "dm*iuc", "rdm*iuc", "um*iuc", "rum*iuc"
    int n = 0;
    std::optional<double> pearson;
    std::optional<double> spearman;

    friend bool operator==(const CorrelationEntry&, const CorrelationEntry&) = default;
};

struct CorrelationReport {
    std::vector<CorrelationEntry> entries; // fixed order: dm, rdm, um, rum

    const CorrelationEntry* find(const std::string& pairing) const;

    friend bool operator==(const CorrelationReport&, const CorrelationReport&) = default;
};

/// Correlate DM/RDM/UM/RUM against IUC over the interfaces where both
/// variables are defined.
CorrelationReport correlate(const std::vector<InterfaceMetrics>& per_interface);

} // namespace ifacelint

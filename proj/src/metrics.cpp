#include "ifacelint/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace ifacelint {

std::optional<double> iuc(const CodeModel& model, const std::string& iface) {
    const InterfaceDecl& decl = model.interface_at(iface);
    const auto clients = model.clients(iface);
    if (clients.empty() || decl.methods.empty()) return std::nullopt;
    const double size = static_cast<double>(decl.methods.size());
    double sum = 0.0;
    for (const auto& client : clients) { // std::set: ascending, deterministic
        int used = 0;
        for (std::size_t d = 0; d < decl.methods.size(); ++d) {
            if (model.reaching_callers(iface, d).count(client)) ++used;
        }
        sum += static_cast<double>(used) / size;
    }
    return sum / static_cast<double>(clients.size());
}

std::vector<InterfaceMetrics> interface_metrics(const FilteredModel& filtered,
                                                const AnomalySet& anomalies) {
    const CodeModel& model = filtered.model;

    std::map<std::string, int> dm_counts;
    for (const auto& group : anomalies.clone_groups) {
        for (const auto& iface : group.interfaces) ++dm_counts[iface];
    }

    std::vector<InterfaceMetrics> out;
    for (const auto& [key, decl] : model.interfaces()) {
        InterfaceMetrics m;
        m.iface = key;
        m.size = decl.size();
        auto dm = dm_counts.find(key);
        m.dm = dm == dm_counts.end() ? 0 : dm->second;
        m.rdm = m.size > 0 ? static_cast<double>(m.dm) / m.size : 0.0;
        if (!filtered.unused_exempt.count(key)) {
            auto unused = anomalies.usage.unused.find(key);
            auto never = anomalies.usage.never_used.find(key);
            m.um = unused == anomalies.usage.unused.end()
                       ? 0
                       : static_cast<int>(unused->second.size());
            m.num = never == anomalies.usage.never_used.end()
                        ? 0
                        : static_cast<int>(never->second.size());
            m.rum = m.size > 0 ? static_cast<double>(*m.um) / m.size : 0.0;
        }
        m.iuc = iuc(model, key);
        m.client_count = static_cast<int>(model.clients(key).size());
        out.push_back(std::move(m));
    }
    return out; // ascending qualified name (model map order)
}

SystemMetrics system_metrics(const FilteredModel& filtered,
                             const AnomalySet& anomalies,
                             const std::vector<InterfaceMetrics>& per_interface) {
    const CodeModel& model = filtered.model;
    SystemMetrics sys;
    sys.system_loc = model.system_loc();
    sys.interfaces = static_cast<long>(model.interfaces().size());

    for (const auto& m : per_interface) {
        sys.total_interface_methods += m.size;
        sys.sdm += m.dm;
        if (m.um) sys.sum += *m.um;
        if (m.num) sys.snum += *m.num;
    }
    sys.distinct_dup_signatures = static_cast<long>(anomalies.clone_groups.size());
    sys.reim = sys.sdm - sys.distinct_dup_signatures;

    std::set<std::string> duplicated_signatures;
    for (const auto& group : anomalies.clone_groups) {
        duplicated_signatures.insert(group.signature.text());
    }

    // Per concrete method: which declarations does it override, are they all
    // never-used, and from how many distinct interfaces does it pick up
    // duplicate declarations. Each method is counted once.
    struct OverrideFacts {
        bool any = false;
        bool all_never_used = true;
        std::set<std::string> dup_interfaces;
    };
    std::map<MethodRef, OverrideFacts> facts;
    for (const auto& [iface, decl] : model.interfaces()) {
        auto never = anomalies.usage.never_used.find(iface);
        for (std::size_t d = 0; d < decl.methods.size(); ++d) {
            const std::string text = decl.methods[d].signature.text();
            const bool never_used =
                never != anomalies.usage.never_used.end() && never->second.count(text);
            const bool duplicated = duplicated_signatures.count(text) > 0;
            for (const auto& mref : model.overriding_methods(iface, d)) {
                auto& entry = facts[mref];
                entry.any = true;
                if (!never_used) entry.all_never_used = false;
                if (duplicated) entry.dup_interfaces.insert(iface);
            }
        }
    }
    for (const auto& [mref, entry] : facts) {
        if (!entry.any) continue;
        if (entry.all_never_used) sys.nulc += model.method_at(mref).loc;
        if (!entry.dup_interfaces.empty()) ++sys.dup_impl_count;
        if (entry.dup_interfaces.size() >= 2) ++sys.shared_impl_count;
    }

    const double total = static_cast<double>(sys.total_interface_methods);
    if (total > 0) {
        sys.rsdm = static_cast<double>(sys.sdm) / total;
        sys.rsum = static_cast<double>(sys.sum) / total;
        sys.rsnum = static_cast<double>(sys.snum) / total;
        sys.rreim = static_cast<double>(sys.reim) / total;
    }
    if (sys.system_loc > 0) {
        sys.rnulc = static_cast<double>(sys.nulc) / static_cast<double>(sys.system_loc);
    }
    if (sys.dup_impl_count > 0) {
        sys.shared_impl_ratio = static_cast<double>(sys.shared_impl_count) /
                                static_cast<double>(sys.dup_impl_count);
    }
    return sys;
}

std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        throw Error(ErrorKind::LengthMismatch,
                    "pearson: sample vectors differ in length");
    }
    const std::size_t n = xs.size();
    if (n < 2) return std::nullopt;
    const double inv = 1.0 / static_cast<double>(n);
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x *= inv;
    mean_y *= inv;
    double cov = 0.0, var_x = 0.0, var_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mean_x;
        const double dy = ys[i] - mean_y;
        cov += dx * dy;
        var_x += dx * dx;
        var_y += dy * dy;
    }
    if (var_x == 0.0 || var_y == 0.0) return std::nullopt;
    double r = cov / std::sqrt(var_x * var_y);
    return std::clamp(r, -1.0, 1.0);
}

std::vector<double> fractional_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        // positions i..j (0-based) share the mean of ranks i+1..j+1
        const double mean_rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mean_rank;
        i = j + 1;
    }
    return ranks;
}

std::optional<double> spearman(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        throw Error(ErrorKind::LengthMismatch,
                    "spearman: sample vectors differ in length");
    }
    if (xs.size() < 2) return std::nullopt;
    const auto rx = fractional_ranks(xs);
    const auto ry = fractional_ranks(ys);
    return pearson(rx, ry);
}

const CorrelationEntry* CorrelationReport::find(const std::string& pairing) const {
    for (const auto& entry : entries) {
        if (entry.pairing == pairing) return &entry;
    }
    return nullptr;
}

CorrelationReport correlate(const std::vector<InterfaceMetrics>& per_interface) {
    struct Pairing {
        const char* name;
        std::function<std::optional<double>(const InterfaceMetrics&)> x;
    };
    const std::vector<Pairing> pairings = {
        {"dm*iuc", [](const InterfaceMetrics& m) -> std::optional<double> {
             return static_cast<double>(m.dm);
         }},
        {"rdm*iuc", [](const InterfaceMetrics& m) -> std::optional<double> {
             return m.rdm;
         }},
        {"um*iuc", [](const InterfaceMetrics& m) -> std::optional<double> {
             if (!m.um) return std::nullopt;
             return static_cast<double>(*m.um);
         }},
        {"rum*iuc", [](const InterfaceMetrics& m) -> std::optional<double> {
             return m.rum;
         }},
    };

    CorrelationReport report;
    for (const auto& pairing : pairings) {
        std::vector<double> xs, ys;
        for (const auto& m : per_interface) {
            if (!m.iuc) continue;
            auto x = pairing.x(m);
            if (!x) continue;
            xs.push_back(*x);
            ys.push_back(*m.iuc);
        }
        CorrelationEntry entry;
        entry.pairing = pairing.name;
        entry.n = static_cast<int>(xs.size());
        entry.pearson = pearson(xs, ys);
        entry.spearman = spearman(xs, ys);
        report.entries.push_back(std::move(entry));
    }
    return report;
}

} // namespace ifacelint

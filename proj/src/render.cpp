#include "ifacelint/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace ifacelint {

namespace {

using nlohmann::json;

std::string num(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

std::string percent(double ratio) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f%%", ratio * 100.0);
    return buf;
}

std::string opt_num(const std::optional<double>& value) {
    return value ? num(*value) : "NA";
}

std::string opt_count(const std::optional<int>& value) {
    return value ? std::to_string(*value) : "NA";
}

std::string pad(const std::string& text, std::size_t width) {
    if (text.size() >= width) return text + " ";
    return text + std::string(width - text.size() + 1, ' ');
}

const char* kCsvHeader = "interface,size,dm,rdm,um,rum,num,iuc,clients";

std::string render_csv(const AnalysisResult& result) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& m : result.interfaces) {
        out += m.iface;
        out += ',' + std::to_string(m.size);
        out += ',' + std::to_string(m.dm);
        out += ',' + num(m.rdm);
        out += ',' + opt_count(m.um);
        out += ',' + opt_num(m.rum);
        out += ',' + opt_count(m.num);
        out += ',' + opt_num(m.iuc);
        out += ',' + std::to_string(m.client_count);
        out += '\n';
    }
    const SystemMetrics& sys = result.system;
    out += "system";
    out += ',' + std::to_string(sys.total_interface_methods);
    out += ',' + std::to_string(sys.sdm);
    out += ',' + num(sys.rsdm);
    out += ',' + std::to_string(sys.sum);
    out += ',' + num(sys.rsum);
    out += ',' + std::to_string(sys.snum);
    out += ",NA,NA\n";
    out += "correlations";
    for (const char* pairing : {"dm*iuc", "rdm*iuc", "um*iuc", "rum*iuc"}) {
        const CorrelationEntry* entry = result.correlations.find(pairing);
        out += ',' + (entry ? opt_num(entry->pearson) : std::string("NA"));
        out += ',' + (entry ? opt_num(entry->spearman) : std::string("NA"));
    }
    out += '\n';
    return out;
}

std::string render_text(const AnalysisResult& result) {
    const SystemMetrics& sys = result.system;
    std::ostringstream out;
    out << "ifacelint report\n";
    out << "================\n\n";

    out << "System\n";
    out << "  interfaces analysed        " << sys.interfaces << "\n";
    out << "  interface methods          " << sys.total_interface_methods << "\n";
    out << "  duplicate methods    SDM   " << sys.sdm << "  (RSDM " << percent(sys.rsdm)
        << ")\n";
    out << "  unused methods       SUM   " << sys.sum << "  (RSUM " << percent(sys.rsum)
        << ")\n";
    out << "  never-used methods   SNUM  " << sys.snum << "  (RSNUM "
        << percent(sys.rsnum) << ")\n";
    out << "  duplicated signatures      " << sys.distinct_dup_signatures << "\n";
    out << "  redundancy           ReIM  " << sys.reim << "  (RReIM "
        << percent(sys.rreim) << ")\n";
    out << "  never-used impl LOC  NULC  " << sys.nulc << "  (RNULC "
        << percent(sys.rnulc) << " of " << sys.system_loc << " LOC)\n";
    out << "  shared implementations     " << sys.shared_impl_count << " of "
        << sys.dup_impl_count << " duplicate-decl implementations ("
        << percent(sys.shared_impl_ratio) << ")\n";
    if (sys.total_interface_methods == 0 || sys.system_loc == 0) {
        out << "  note: ratios with an empty denominator are reported as 0\n";
    }
    out << "\n";

    long hierarchy_groups = 0;
    for (const auto& group : result.anomalies.clone_groups) {
        if (group.hierarchy_related) ++hierarchy_groups;
    }
    out << "Anomalies\n";
    out << "  clone groups               " << result.anomalies.clone_groups.size()
        << "  (" << hierarchy_groups << " within an extends hierarchy)\n";
    out << "  duplicate interface pairs  "
        << result.anomalies.duplicate_interface_pairs.size() << "\n";
    std::size_t listed = 0;
    for (const auto& group : result.anomalies.clone_groups) {
        if (++listed > 20) {
            out << "  ...\n";
            break;
        }
        out << "  " << group.signature.text() << " declared in ";
        for (std::size_t i = 0; i < group.interfaces.size(); ++i) {
            if (i) out << ", ";
            out << group.interfaces[i];
        }
        if (group.hierarchy_related) out << "  [hierarchy]";
        out << "\n";
    }
    out << "\n";

    out << "Interfaces (worst first by " << result.provenance.sort_key << ")\n";
    out << "  " << pad("interface", 40) << pad("size", 5) << pad("dm", 4)
        << pad("rdm", 9) << pad("um", 4) << pad("rum", 9) << pad("num", 4)
        << pad("iuc", 9) << "clients\n";
    for (const auto& m : result.interfaces) {
        out << "  " << pad(m.iface, 40) << pad(std::to_string(m.size), 5)
            << pad(std::to_string(m.dm), 4) << pad(num(m.rdm), 9)
            << pad(opt_count(m.um), 4) << pad(opt_num(m.rum), 9)
            << pad(opt_count(m.num), 4) << pad(opt_num(m.iuc), 9) << m.client_count
            << "\n";
    }
    out << "\n";

    const std::string& mode = result.provenance.correlation_display;
    out << "Correlations\n";
    out << "  " << pad("pairing", 10) << pad("n", 5);
    if (mode != "spearman") out << pad("pearson", 9);
    if (mode != "pearson") out << pad("spearman", 9);
    out << "\n";
    for (const auto& entry : result.correlations.entries) {
        out << "  " << pad(entry.pairing, 10) << pad(std::to_string(entry.n), 5);
        if (mode != "spearman") out << pad(opt_num(entry.pearson), 9);
        if (mode != "pearson") out << pad(opt_num(entry.spearman), 9);
        out << "\n";
    }
    out << "\n";

    out << "Suggestions (" << result.suggestions.size() << ")\n";
    for (const auto& s : result.suggestions) {
        out << "  [" << suggestion_kind_name(s.kind) << "] " << s.narrative << "\n";
        out << "    declarations removed " << s.savings.declarations_removed
            << ", implementations removable "
            << s.savings.implementation_methods_removable << ", loc savings "
            << s.savings.loc_savings << "\n";
    }
    out << "\n";

    const Provenance& p = result.provenance;
    out << "Provenance\n";
    out << "  frontend " << p.frontend << ", files " << p.files << ", parse errors "
        << p.parse_errors << ", parse warnings " << p.parse_warnings
        << ", model warnings " << p.model_warnings << "\n";
    out << "  filters: exclude_tests=" << (p.filters.exclude_tests ? "on" : "off")
        << " exclude_markers=" << (p.filters.exclude_markers ? "on" : "off")
        << " min_implementations=" << p.filters.min_implementations
        << " library_mode=" << (p.filters.treat_as_library ? "on" : "off") << "\n";
    return std::move(out).str();
}

json to_json(const std::optional<double>& value) {
    return value ? json(*value) : json(nullptr);
}

json to_json(const std::optional<int>& value) {
    return value ? json(*value) : json(nullptr);
}

json usage_to_json(const std::map<std::string, std::set<std::string>>& table) {
    json out = json::object();
    for (const auto& [iface, sigs] : table) {
        out[iface] = json(sigs);
    }
    return out;
}

std::map<std::string, std::set<std::string>> usage_from_json(const json& table) {
    std::map<std::string, std::set<std::string>> out;
    for (auto it = table.begin(); it != table.end(); ++it) {
        std::set<std::string> sigs;
        for (const auto& sig : it.value()) sigs.insert(sig.get<std::string>());
        out.emplace(it.key(), std::move(sigs));
    }
    return out;
}

MethodSignature signature_from_json(const json& record) {
    std::vector<std::string> params;
    for (const auto& p : record.at("params")) params.push_back(p.get<std::string>());
    return MethodSignature::make(record.at("return").get<std::string>(),
                                 record.at("name").get<std::string>(), params);
}

std::string render_machine(const AnalysisResult& result) {
    json doc;

    const SystemMetrics& sys = result.system;
    doc["system"] = {{"interfaces", sys.interfaces},
                     {"total_interface_methods", sys.total_interface_methods},
                     {"sdm", sys.sdm},
                     {"sum", sys.sum},
                     {"snum", sys.snum},
                     {"distinct_dup_signatures", sys.distinct_dup_signatures},
                     {"reim", sys.reim},
                     {"nulc", sys.nulc},
                     {"shared_impl_count", sys.shared_impl_count},
                     {"dup_impl_count", sys.dup_impl_count},
                     {"system_loc", sys.system_loc},
                     {"rsdm", sys.rsdm},
                     {"rsum", sys.rsum},
                     {"rsnum", sys.rsnum},
                     {"rreim", sys.rreim},
                     {"rnulc", sys.rnulc},
                     {"shared_impl_ratio", sys.shared_impl_ratio}};

    doc["interfaces"] = json::array();
    for (const auto& m : result.interfaces) {
        doc["interfaces"].push_back({{"interface", m.iface},
                                     {"size", m.size},
                                     {"dm", m.dm},
                                     {"um", to_json(m.um)},
                                     {"num", to_json(m.num)},
                                     {"rdm", m.rdm},
                                     {"rum", to_json(m.rum)},
                                     {"iuc", to_json(m.iuc)},
                                     {"clients", m.client_count}});
    }

    json groups = json::array();
    for (const auto& group : result.anomalies.clone_groups) {
        groups.push_back({{"signature",
                           {{"return", group.signature.return_type},
                            {"name", group.signature.name},
                            {"params", group.signature.param_types}}},
                          {"interfaces", group.interfaces},
                          {"hierarchy_related", group.hierarchy_related}});
    }
    json pairs = json::array();
    for (const auto& [a, b] : result.anomalies.duplicate_interface_pairs) {
        pairs.push_back(json::array({a, b}));
    }
    doc["anomalies"] = {{"clone_groups", groups},
                        {"duplicate_interface_pairs", pairs},
                        {"unused", usage_to_json(result.anomalies.usage.unused)},
                        {"never_used", usage_to_json(result.anomalies.usage.never_used)},
                        {"internal_only",
                         usage_to_json(result.anomalies.usage.internal_only)}};

    doc["correlations"] = json::array();
    for (const auto& entry : result.correlations.entries) {
        doc["correlations"].push_back({{"pairing", entry.pairing},
                                       {"n", entry.n},
                                       {"pearson", to_json(entry.pearson)},
                                       {"spearman", to_json(entry.spearman)}});
    }

    doc["suggestions"] = json::array();
    for (const auto& s : result.suggestions) {
        json methods = json::array();
        for (const auto& mref : s.removable_methods) {
            methods.push_back({{"owner", mref.owner}, {"index", mref.method_index}});
        }
        doc["suggestions"].push_back(
            {{"kind", suggestion_kind_name(s.kind)},
             {"target_interfaces", s.target_interfaces},
             {"signatures", s.signatures},
             {"new_interface", s.new_interface},
             {"removable_methods", methods},
             {"savings",
              {{"declarations_removed", s.savings.declarations_removed},
               {"implementation_methods_removable",
                s.savings.implementation_methods_removable},
               {"loc_savings", s.savings.loc_savings}}},
             {"narrative", s.narrative}});
    }

    const Provenance& p = result.provenance;
    doc["provenance"] = {{"frontend", p.frontend},
                         {"exclude_tests", p.filters.exclude_tests},
                         {"exclude_markers", p.filters.exclude_markers},
                         {"min_implementations", p.filters.min_implementations},
                         {"library_mode", p.filters.treat_as_library},
                         {"correlation", p.correlation_display},
                         {"sort_key", p.sort_key},
                         {"parse_errors", p.parse_errors},
                         {"parse_warnings", p.parse_warnings},
                         {"model_warnings", p.model_warnings},
                         {"files", p.files}};

    return doc.dump(2) + "\n";
}

} // namespace

std::string render(const AnalysisResult& result, RenderFormat format) {
    switch (format) {
    case RenderFormat::Text: return render_text(result);
    case RenderFormat::Csv: return render_csv(result);
    case RenderFormat::Machine: return render_machine(result);
    }
    throw Error(ErrorKind::Usage, "unknown render format");
}

AnalysisResult parse_machine(const std::string& document) {
    json doc = json::parse(document, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
        throw Error(ErrorKind::Input, "not a machine-readable report");
    }
    AnalysisResult result;

    const json& sys = doc.at("system");
    result.system.interfaces = sys.at("interfaces").get<long>();
    result.system.total_interface_methods =
        sys.at("total_interface_methods").get<long>();
    result.system.sdm = sys.at("sdm").get<long>();
    result.system.sum = sys.at("sum").get<long>();
    result.system.snum = sys.at("snum").get<long>();
    result.system.distinct_dup_signatures =
        sys.at("distinct_dup_signatures").get<long>();
    result.system.reim = sys.at("reim").get<long>();
    result.system.nulc = sys.at("nulc").get<long>();
    result.system.shared_impl_count = sys.at("shared_impl_count").get<long>();
    result.system.dup_impl_count = sys.at("dup_impl_count").get<long>();
    result.system.system_loc = sys.at("system_loc").get<long>();
    result.system.rsdm = sys.at("rsdm").get<double>();
    result.system.rsum = sys.at("rsum").get<double>();
    result.system.rsnum = sys.at("rsnum").get<double>();
    result.system.rreim = sys.at("rreim").get<double>();
    result.system.rnulc = sys.at("rnulc").get<double>();
    result.system.shared_impl_ratio = sys.at("shared_impl_ratio").get<double>();

    for (const auto& record : doc.at("interfaces")) {
        InterfaceMetrics m;
        m.iface = record.at("interface").get<std::string>();
        m.size = record.at("size").get<int>();
        m.dm = record.at("dm").get<int>();
        if (!record.at("um").is_null()) m.um = record.at("um").get<int>();
        if (!record.at("num").is_null()) m.num = record.at("num").get<int>();
        m.rdm = record.at("rdm").get<double>();
        if (!record.at("rum").is_null()) m.rum = record.at("rum").get<double>();
        if (!record.at("iuc").is_null()) m.iuc = record.at("iuc").get<double>();
        m.client_count = record.at("clients").get<int>();
        result.interfaces.push_back(std::move(m));
    }

    const json& anomalies = doc.at("anomalies");
    for (const auto& record : anomalies.at("clone_groups")) {
        CloneGroup group;
        group.signature = signature_from_json(record.at("signature"));
        for (const auto& iface : record.at("interfaces")) {
            group.interfaces.push_back(iface.get<std::string>());
        }
        group.hierarchy_related = record.at("hierarchy_related").get<bool>();
        result.anomalies.clone_groups.push_back(std::move(group));
    }
    for (const auto& record : anomalies.at("duplicate_interface_pairs")) {
        result.anomalies.duplicate_interface_pairs.emplace_back(
            record.at(0).get<std::string>(), record.at(1).get<std::string>());
    }
    result.anomalies.usage.unused = usage_from_json(anomalies.at("unused"));
    result.anomalies.usage.never_used = usage_from_json(anomalies.at("never_used"));
    result.anomalies.usage.internal_only =
        usage_from_json(anomalies.at("internal_only"));

    for (const auto& record : doc.at("correlations")) {
        CorrelationEntry entry;
        entry.pairing = record.at("pairing").get<std::string>();
        entry.n = record.at("n").get<int>();
        if (!record.at("pearson").is_null()) {
            entry.pearson = record.at("pearson").get<double>();
        }
        if (!record.at("spearman").is_null()) {
            entry.spearman = record.at("spearman").get<double>();
        }
        result.correlations.entries.push_back(std::move(entry));
    }

    for (const auto& record : doc.at("suggestions")) {
        RefactoringSuggestion s;
        const std::string kind = record.at("kind").get<std::string>();
        for (SuggestionKind candidate :
             {SuggestionKind::MergeDuplicateInterface,
              SuggestionKind::ExtractSharedSuperInterface,
              SuggestionKind::RemoveRedeclarationInSubInterface,
              SuggestionKind::RemoveUnusedDeclaration,
              SuggestionKind::DemoteInternalOnlyMethod}) {
            if (kind == suggestion_kind_name(candidate)) s.kind = candidate;
        }
        for (const auto& t : record.at("target_interfaces")) {
            s.target_interfaces.push_back(t.get<std::string>());
        }
        for (const auto& t : record.at("signatures")) {
            s.signatures.push_back(t.get<std::string>());
        }
        s.new_interface = record.at("new_interface").get<std::string>();
        for (const auto& m : record.at("removable_methods")) {
            s.removable_methods.push_back(
                {m.at("owner").get<std::string>(), m.at("index").get<std::size_t>()});
        }
        const json& savings = record.at("savings");
        s.savings.declarations_removed = savings.at("declarations_removed").get<int>();
        s.savings.implementation_methods_removable =
            savings.at("implementation_methods_removable").get<int>();
        s.savings.loc_savings = savings.at("loc_savings").get<long>();
        s.narrative = record.at("narrative").get<std::string>();
        result.suggestions.push_back(std::move(s));
    }

    const json& p = doc.at("provenance");
    result.provenance.frontend = p.at("frontend").get<std::string>();
    result.provenance.filters.exclude_tests = p.at("exclude_tests").get<bool>();
    result.provenance.filters.exclude_markers = p.at("exclude_markers").get<bool>();
    result.provenance.filters.min_implementations =
        p.at("min_implementations").get<int>();
    result.provenance.filters.treat_as_library = p.at("library_mode").get<bool>();
    result.provenance.correlation_display = p.at("correlation").get<std::string>();
    result.provenance.sort_key = p.at("sort_key").get<std::string>();
    result.provenance.parse_errors = p.at("parse_errors").get<long>();
    result.provenance.parse_warnings = p.at("parse_warnings").get<long>();
    result.provenance.model_warnings = p.at("model_warnings").get<long>();
    result.provenance.files = p.at("files").get<long>();

    return result;
}

} // namespace ifacelint

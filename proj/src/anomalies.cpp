#include "ifacelint/anomalies.hpp"

#include <algorithm>

namespace ifacelint {

namespace {

std::set<std::string> compute_exempt(const CodeModel& model, int min_implementations) {
    std::set<std::string> exempt;
    for (const auto& [key, decl] : model.interfaces()) {
        if (static_cast<int>(model.implementations(key).size()) < min_implementations) {
            exempt.insert(key);
        }
    }
    return exempt;
}

} // namespace

FilteredModel FilteredModel::passthrough(CodeModel model, FilterConfig config) {
    FilteredModel out;
    out.unused_exempt = compute_exempt(model, config.min_implementations);
    out.model = std::move(model);
    out.config = config;
    return out;
}

FilteredModel apply_filters(const CodeModel& model, const FilterConfig& config) {
    std::set<std::string> excluded;

    if (config.exclude_tests) {
        for (const auto& [key, decl] : model.classes()) {
            if (decl.is_test) excluded.insert(key);
        }
        for (const auto& [key, decl] : model.interfaces()) {
            if (decl.is_test) {
                excluded.insert(key);
                continue;
            }
            // interfaces whose every implementation is a test class
            const auto& impls = model.implementations(key);
            if (!impls.empty() &&
                std::all_of(impls.begin(), impls.end(), [&](const std::string& cls) {
                    return model.class_at(cls).is_test;
                })) {
                excluded.insert(key);
            }
        }
    }
    if (config.exclude_markers) {
        for (const auto& [key, decl] : model.interfaces()) {
            if (decl.methods.empty()) excluded.insert(key);
        }
    }

    // Rebuild from the surviving declarations. Edges and call records that
    // touch an excluded type are scrubbed so they do not come back as
    // external-reference warnings.
    std::vector<InterfaceDecl> interfaces;
    for (const auto& [key, decl] : model.interfaces()) {
        if (excluded.count(key)) continue;
        InterfaceDecl copy = decl;
        std::erase_if(copy.extends, [&](const TypeRef& super) {
            return excluded.count(super.qualified()) > 0;
        });
        interfaces.push_back(std::move(copy));
    }
    std::vector<ClassDecl> classes;
    for (const auto& [key, decl] : model.classes()) {
        if (excluded.count(key)) continue;
        ClassDecl copy = decl;
        if (copy.extends && excluded.count(copy.extends->qualified())) {
            copy.extends.reset();
        }
        std::erase_if(copy.implements, [&](const TypeRef& iface) {
            return excluded.count(iface.qualified()) > 0;
        });
        classes.push_back(std::move(copy));
    }
    std::vector<CallRecord> calls;
    for (const auto& call : model.calls()) {
        if (excluded.count(call.caller.qualified())) continue;
        if (excluded.count(call.receiver_type.qualified())) continue;
        calls.push_back(call);
    }

    FilteredModel out;
    out.model = CodeModel::build(std::move(interfaces), std::move(classes),
                                 std::move(calls), model.system_loc());
    out.unused_exempt = compute_exempt(out.model, config.min_implementations);
    out.config = config;
    return out;
}

std::vector<CloneGroup> find_clone_groups(const CodeModel& model) {
    // signature text -> (signature, declaring interfaces)
    std::map<std::string, CloneGroup> by_signature;
    for (const auto& [key, decl] : model.interfaces()) {
        for (const auto& method : decl.methods) {
            auto& group = by_signature[method.signature.text()];
            group.signature = method.signature;
            group.interfaces.push_back(key);
        }
    }

    std::vector<CloneGroup> out;
    for (auto& [text, group] : by_signature) {
        std::sort(group.interfaces.begin(), group.interfaces.end());
        if (group.interfaces.size() < 2) continue;
        group.hierarchy_related = false;
        for (std::size_t a = 0; a < group.interfaces.size() && !group.hierarchy_related; ++a) {
            const auto& subs = model.sub_interfaces(group.interfaces[a]);
            for (std::size_t b = 0; b < group.interfaces.size(); ++b) {
                if (a != b && subs.count(group.interfaces[b])) {
                    group.hierarchy_related = true;
                    break;
                }
            }
        }
        out.push_back(std::move(group));
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> find_duplicate_interfaces(
    const CodeModel& model, const std::vector<CloneGroup>& groups) {
    // signature -> interfaces declaring it
    std::map<std::string, std::set<std::string>> holders;
    for (const auto& group : groups) {
        holders[group.signature.text()] = {group.interfaces.begin(),
                                           group.interfaces.end()};
    }

    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [key, decl] : model.interfaces()) {
        if (decl.methods.empty()) continue;
        // candidates = interfaces declaring every signature of this one
        std::set<std::string> candidates;
        bool first = true;
        for (const auto& method : decl.methods) {
            auto hit = holders.find(method.signature.text());
            if (hit == holders.end()) {
                candidates.clear();
                break;
            }
            if (first) {
                candidates = hit->second;
                first = false;
            } else {
                std::set<std::string> next;
                std::set_intersection(candidates.begin(), candidates.end(),
                                      hit->second.begin(), hit->second.end(),
                                      std::inserter(next, next.begin()));
                candidates = std::move(next);
            }
            if (candidates.empty()) break;
        }
        for (const auto& other : candidates) {
            if (other != key) out.emplace_back(key, other);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

UnusedReport find_unused(const FilteredModel& filtered) {
    const CodeModel& model = filtered.model;
    UnusedReport report;
    for (const auto& [key, decl] : model.interfaces()) {
        if (filtered.unused_exempt.count(key)) continue;
        const auto& impls = model.implementations(key);
        auto& unused = report.unused[key];
        auto& never = report.never_used[key];
        auto& internal = report.internal_only[key];
        for (std::size_t d = 0; d < decl.methods.size(); ++d) {
            const auto& callers = model.reaching_callers(key, d);
            bool outside_call = std::any_of(
                callers.begin(), callers.end(),
                [&](const std::string& caller) { return !impls.count(caller); });
            if (outside_call) continue;
            const std::string text = decl.methods[d].signature.text();
            unused.insert(text);
            if (callers.empty()) {
                never.insert(text);
            } else {
                internal.insert(text);
            }
        }
    }
    return report;
}

AnomalySet detect_anomalies(const FilteredModel& filtered) {
    AnomalySet out;
    out.clone_groups = find_clone_groups(filtered.model);
    out.duplicate_interface_pairs =
        find_duplicate_interfaces(filtered.model, out.clone_groups);
    out.usage = find_unused(filtered);
    return out;
}

} // namespace ifacelint

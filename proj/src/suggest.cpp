#include "ifacelint/report.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ifacelint {

const char* suggestion_kind_name(SuggestionKind kind) {
    switch (kind) {
    case SuggestionKind::MergeDuplicateInterface: return "merge-duplicate-interface";
    case SuggestionKind::ExtractSharedSuperInterface: return "extract-shared-super-interface";
    case SuggestionKind::RemoveRedeclarationInSubInterface:
        return "remove-redeclaration-in-subinterface";
    case SuggestionKind::RemoveUnusedDeclaration: return "remove-unused-declaration";
    case SuggestionKind::DemoteInternalOnlyMethod: return "demote-internal-only-method";
    }
    return "unknown";
}

namespace {

// Concrete methods whose every overridden declaration is never used; these
// are the ones a remove-unused suggestion may claim.
std::set<MethodRef> removable_methods(const CodeModel& model,
                                      const UnusedReport& usage) {
    struct Facts {
        bool any = false;
        bool all_never = true;
    };
    std::map<MethodRef, Facts> facts;
    for (const auto& [iface, decl] : model.interfaces()) {
        auto never = usage.never_used.find(iface);
        for (std::size_t d = 0; d < decl.methods.size(); ++d) {
            const bool never_used =
                never != usage.never_used.end() &&
                never->second.count(decl.methods[d].signature.text());
            for (const auto& mref : model.overriding_methods(iface, d)) {
                auto& entry = facts[mref];
                entry.any = true;
                if (!never_used) entry.all_never = false;
            }
        }
    }
    std::set<MethodRef> out;
    for (const auto& [mref, entry] : facts) {
        if (entry.any && entry.all_never) out.insert(mref);
    }
    return out;
}

std::string unique_type_name(const std::set<std::string>& taken,
                             const std::string& package, const std::string& base) {
    for (int n = 0;; ++n) {
        std::string simple = n == 0 ? base : base + std::to_string(n);
        std::string qualified = package.empty() ? simple : package + "." + simple;
        if (!taken.count(qualified)) return qualified;
    }
}

} // namespace

std::vector<RefactoringSuggestion> suggest(const FilteredModel& filtered,
                                           const AnomalySet& anomalies) {
    const CodeModel& model = filtered.model;
    std::vector<RefactoringSuggestion> out;

    // --- merge mutual duplicates ------------------------------------------
    // Mutual pairs mean identical signature sets; group such interfaces and
    // keep the lexicographically smallest of each group.
    std::set<std::pair<std::string, std::string>> pair_set(
        anomalies.duplicate_interface_pairs.begin(),
        anomalies.duplicate_interface_pairs.end());
    std::map<std::string, std::string> merged_into; // dropped -> kept
    {
        std::map<std::string, std::vector<std::string>> by_sig_set;
        for (const auto& [a, b] : pair_set) {
            if (a < b && pair_set.count({b, a})) {
                std::string sigs;
                for (const auto& m : model.interface_at(a).methods) {
                    sigs += m.signature.text();
                    sigs += ';';
                }
                auto& group = by_sig_set[sigs];
                if (std::find(group.begin(), group.end(), a) == group.end())
                    group.push_back(a);
                if (std::find(group.begin(), group.end(), b) == group.end())
                    group.push_back(b);
            }
        }
        for (auto& [sigs, group] : by_sig_set) {
            std::sort(group.begin(), group.end());
            const std::string& keep = group.front();
            for (std::size_t k = 1; k < group.size(); ++k) {
                const std::string& drop = group[k];
                merged_into[drop] = keep;
                RefactoringSuggestion s;
                s.kind = SuggestionKind::MergeDuplicateInterface;
                s.target_interfaces = {keep, drop};
                for (const auto& m : model.interface_at(drop).methods) {
                    s.signatures.push_back(m.signature.text());
                }
                s.savings.declarations_removed =
                    static_cast<int>(s.signatures.size());
                s.narrative = drop + " declares the same method set as " + keep +
                              "; remove it after moving its incoming dependencies to " +
                              keep + ".";
                out.push_back(std::move(s));
            }
        }
    }
    auto rep = [&](const std::string& iface) {
        auto hit = merged_into.find(iface);
        return hit == merged_into.end() ? iface : hit->second;
    };

    // --- re-declarations in sub-interfaces / shared extraction -------------
    std::vector<RefactoringSuggestion> redecl;
    std::map<std::vector<std::string>, std::vector<std::string>> extract_buckets;
    for (const auto& group : anomalies.clone_groups) {
        std::set<std::string> survivors;
        for (const auto& iface : group.interfaces) survivors.insert(rep(iface));
        if (survivors.size() < 2) continue; // merges resolve this signature

        // members that re-declare a signature inherited from an ancestor in
        // the same group lose the re-declaration
        std::set<std::string> maximal = survivors;
        for (const auto& sub : survivors) {
            std::vector<std::string> ancestors;
            for (const auto& anc : survivors) {
                if (anc != sub && model.sub_interfaces(anc).count(sub)) {
                    ancestors.push_back(anc);
                }
            }
            if (ancestors.empty()) continue;
            std::sort(ancestors.begin(), ancestors.end());
            maximal.erase(sub);
            RefactoringSuggestion s;
            s.kind = SuggestionKind::RemoveRedeclarationInSubInterface;
            s.target_interfaces = {sub, ancestors.front()};
            s.signatures = {group.signature.text()};
            s.savings.declarations_removed = 1;
            s.narrative = sub + " re-declares " + group.signature.text() +
                          " inherited from " + ancestors.front() +
                          "; the re-declaration can be removed.";
            redecl.push_back(std::move(s));
        }
        if (maximal.size() >= 2) {
            std::vector<std::string> holders(maximal.begin(), maximal.end());
            extract_buckets[holders].push_back(group.signature.text());
        }
    }

    std::set<std::string> taken;
    for (const auto& [key, _] : model.interfaces()) taken.insert(key);
    for (const auto& [key, _] : model.classes()) taken.insert(key);
    for (auto& [holders, signatures] : extract_buckets) {
        RefactoringSuggestion s;
        s.kind = SuggestionKind::ExtractSharedSuperInterface;
        s.target_interfaces = holders;
        s.signatures = signatures;
        std::sort(s.signatures.begin(), s.signatures.end());
        TypeRef smallest = TypeRef::from_qualified(holders.front());
        s.new_interface =
            unique_type_name(taken, smallest.package, smallest.simple_name + "Base");
        taken.insert(s.new_interface);
        s.savings.declarations_removed = static_cast<int>(
            (holders.size() - 1) * s.signatures.size());
        s.narrative = std::to_string(s.signatures.size()) +
                      " signature(s) recur in " + std::to_string(holders.size()) +
                      " unrelated interfaces; extract them into " + s.new_interface +
                      " and extend it.";
        out.push_back(std::move(s));
    }
    for (auto& s : redecl) out.push_back(std::move(s));

    // --- unused declarations ------------------------------------------------
    const bool library = filtered.config.treat_as_library;
    std::set<MethodRef> removable = removable_methods(model, anomalies.usage);
    std::set<MethodRef> claimed;
    for (const auto& [iface, sigs] : anomalies.usage.never_used) {
        const InterfaceDecl& decl = model.interface_at(iface);
        for (const auto& text : sigs) {
            std::size_t index = decl.methods.size();
            for (std::size_t d = 0; d < decl.methods.size(); ++d) {
                if (decl.methods[d].signature.text() == text) {
                    index = d;
                    break;
                }
            }
            if (index == decl.methods.size()) {
                throw Error(ErrorKind::Internal,
                            "anomaly set names a missing declaration: " + text);
            }
            // safety: re-verify against the model, not the cached set
            for (const auto& call : model.calls()) {
                if (model.reaches(call, iface, decl.methods[index])) {
                    throw Error(ErrorKind::Internal,
                                "declaration reported never-used has a reaching call: " +
                                    iface + "::" + text);
                }
            }
            RefactoringSuggestion s;
            s.kind = SuggestionKind::RemoveUnusedDeclaration;
            s.target_interfaces = {iface};
            s.signatures = {text};
            s.savings.declarations_removed = 1;
            for (const auto& mref : model.overriding_methods(iface, index)) {
                if (removable.count(mref) && claimed.insert(mref).second) {
                    s.removable_methods.push_back(mref);
                    s.savings.loc_savings += model.method_at(mref).loc;
                }
            }
            s.savings.implementation_methods_removable =
                static_cast<int>(s.removable_methods.size());
            if (library) {
                s.narrative = "review: possible external API - no class in this "
                              "system calls " + text + " on " + iface +
                              " or any implementation.";
            } else {
                s.narrative = "No class calls " + text + " on " + iface +
                              " or any implementation; the declaration and " +
                              std::to_string(s.removable_methods.size()) +
                              " implementation(s) can be removed.";
            }
            out.push_back(std::move(s));
        }
    }

    // --- internal-only methods ----------------------------------------------
    for (const auto& [iface, sigs] : anomalies.usage.internal_only) {
        for (const auto& text : sigs) {
            RefactoringSuggestion s;
            s.kind = SuggestionKind::DemoteInternalOnlyMethod;
            s.target_interfaces = {iface};
            s.signatures = {text};
            s.savings.declarations_removed = 1;
            s.narrative = text + " is used only inside implementing classes; it "
                          "leaks internal behavior and should not be declared on " +
                          iface + ".";
            out.push_back(std::move(s));
        }
    }

    std::stable_sort(out.begin(), out.end(),
                     [](const RefactoringSuggestion& a, const RefactoringSuggestion& b) {
                         if (a.kind != b.kind) return a.kind < b.kind;
                         if (a.target_interfaces != b.target_interfaces)
                             return a.target_interfaces < b.target_interfaces;
                         return a.signatures < b.signatures;
                     });
    return out;
}

CodeModel apply_suggestions(const CodeModel& model,
                            const std::vector<RefactoringSuggestion>& suggestions) {
    std::map<std::string, InterfaceDecl> interfaces(model.interfaces());
    std::map<std::string, ClassDecl> classes(model.classes());
    std::vector<CallRecord> calls = model.calls();
    long removed_loc = 0;

    auto rename_everywhere = [&](const std::string& from, const std::string& to) {
        TypeRef target = TypeRef::from_qualified(to);
        for (auto& [key, decl] : interfaces) {
            std::set<TypeRef> extends;
            for (const auto& super : decl.extends) {
                if (super.qualified() == from) {
                    if (key != to) extends.insert(target);
                } else {
                    extends.insert(super);
                }
            }
            decl.extends = std::move(extends);
        }
        for (auto& [key, decl] : classes) {
            std::set<TypeRef> implements;
            for (const auto& iface : decl.implements) {
                implements.insert(iface.qualified() == from ? target : iface);
            }
            decl.implements = std::move(implements);
        }
        for (auto& call : calls) {
            if (call.receiver_type.qualified() == from) call.receiver_type = target;
        }
    };

    auto drop_signature = [&](const std::string& iface, const std::string& text) {
        auto it = interfaces.find(iface);
        if (it == interfaces.end()) return;
        std::erase_if(it->second.methods, [&](const MethodDecl& m) {
            return m.signature.text() == text;
        });
    };

    for (const auto& s : suggestions) {
        switch (s.kind) {
        case SuggestionKind::MergeDuplicateInterface: {
            const std::string& keep = s.target_interfaces.at(0);
            const std::string& drop = s.target_interfaces.at(1);
            interfaces.erase(drop);
            rename_everywhere(drop, keep);
            break;
        }
        case SuggestionKind::ExtractSharedSuperInterface: {
            InterfaceDecl extracted;
            extracted.ref = TypeRef::from_qualified(s.new_interface);
            const std::string& donor = s.target_interfaces.at(0);
            auto donor_it = interfaces.find(donor);
            for (const auto& text : s.signatures) {
                if (donor_it != interfaces.end()) {
                    for (const auto& m : donor_it->second.methods) {
                        if (m.signature.text() == text) {
                            MethodDecl copy = m;
                            copy.owner = extracted.ref;
                            extracted.methods.push_back(copy);
                            break;
                        }
                    }
                }
            }
            for (const auto& holder : s.target_interfaces) {
                auto it = interfaces.find(holder);
                if (it == interfaces.end()) continue;
                for (const auto& text : s.signatures) {
                    std::erase_if(it->second.methods, [&](const MethodDecl& m) {
                        return m.signature.text() == text;
                    });
                }
                it->second.extends.insert(extracted.ref);
            }
            interfaces.emplace(s.new_interface, std::move(extracted));
            break;
        }
        case SuggestionKind::RemoveRedeclarationInSubInterface: {
            for (const auto& text : s.signatures) {
                drop_signature(s.target_interfaces.at(0), text);
            }
            break;
        }
        case SuggestionKind::RemoveUnusedDeclaration: {
            drop_signature(s.target_interfaces.at(0), s.signatures.at(0));
            for (const auto& mref : s.removable_methods) {
                auto cls = classes.find(mref.owner);
                if (cls == classes.end()) continue;
                const std::string text = model.method_at(mref).signature.text();
                std::erase_if(cls->second.methods, [&](const MethodDecl& m) {
                    if (m.is_abstract || !m.is_public) return false;
                    if (m.signature.text() != text) return false;
                    removed_loc += m.loc;
                    return true;
                });
            }
            break;
        }
        case SuggestionKind::DemoteInternalOnlyMethod: {
            drop_signature(s.target_interfaces.at(0), s.signatures.at(0));
            break;
        }
        }
    }

    std::vector<InterfaceDecl> iface_list;
    iface_list.reserve(interfaces.size());
    for (auto& [key, decl] : interfaces) iface_list.push_back(std::move(decl));
    std::vector<ClassDecl> class_list;
    class_list.reserve(classes.size());
    for (auto& [key, decl] : classes) class_list.push_back(std::move(decl));

    long system_loc = std::max(0L, model.system_loc() - removed_loc);
    return CodeModel::build(std::move(iface_list), std::move(class_list),
                            std::move(calls), system_loc);
}

} // namespace ifacelint

#include "ifacelint/model.hpp"

#include <algorithm>
#include <cctype>

namespace ifacelint {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Usage: return "Usage";
    case ErrorKind::Input: return "Input";
    case ErrorKind::MalformedFile: return "MalformedFile";
    case ErrorKind::Encoding: return "Encoding";
    case ErrorKind::SchemaViolation: return "SchemaViolation";
    case ErrorKind::CyclicHierarchy: return "CyclicHierarchy";
    case ErrorKind::DuplicateTypeName: return "DuplicateTypeName";
    case ErrorKind::UnknownType: return "UnknownType";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

TypeRef TypeRef::from_qualified(const std::string& qualified) {
    auto dot = qualified.rfind('.');
    if (dot == std::string::npos) return TypeRef{"", qualified};
    return TypeRef{qualified.substr(0, dot), qualified.substr(dot + 1)};
}

std::string canonical_type_name(const std::string& raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    }
    return out;
}

MethodSignature MethodSignature::make(const std::string& return_type,
                                      const std::string& name,
                                      const std::vector<std::string>& param_types) {
    MethodSignature sig;
    sig.return_type = canonical_type_name(return_type);
    sig.name = canonical_type_name(name);
    sig.param_types.reserve(param_types.size());
    for (const auto& p : param_types) sig.param_types.push_back(canonical_type_name(p));
    return sig;
}

std::string MethodSignature::text() const {
    std::string out = return_type;
    out += ' ';
    out += name;
    out += '(';
    for (std::size_t i = 0; i < param_types.size(); ++i) {
        if (i) out += ',';
        out += param_types[i];
    }
    out += ')';
    return out;
}

namespace {

// Deterministic order for method lists inside one declaration.
bool method_order(const MethodDecl& a, const MethodDecl& b) {
    auto ka = std::tuple(a.signature.text(), a.loc, a.is_public, a.is_abstract);
    auto kb = std::tuple(b.signature.text(), b.loc, b.is_public, b.is_abstract);
    return ka < kb;
}

// DFS cycle detection over resolved edges.
struct CycleFinder {
    const std::map<std::string, std::vector<std::string>>& edges;
    std::map<std::string, int> state; // 0 unseen, 1 on stack, 2 done

    bool has_cycle(const std::string& node) {
        int& s = state[node];
        if (s == 1) return true;
        if (s == 2) return false;
        s = 1;
        auto it = edges.find(node);
        if (it != edges.end()) {
            for (const auto& next : it->second) {
                if (has_cycle(next)) return true;
            }
        }
        s = 2;
        return false;
    }
};

} // namespace

CodeModel CodeModel::build(std::vector<InterfaceDecl> interfaces,
                           std::vector<ClassDecl> classes,
                           std::vector<CallRecord> calls, long system_loc) {
    CodeModel model;
    model.system_loc_ = system_loc;

    for (auto& decl : interfaces) {
        const std::string key = decl.ref.qualified();
        if (model.interfaces_.count(key) || model.classes_.count(key)) {
            throw Error(ErrorKind::DuplicateTypeName,
                        "duplicate type name: " + key);
        }
        model.interfaces_.emplace(key, std::move(decl));
    }
    for (auto& decl : classes) {
        const std::string key = decl.ref.qualified();
        if (model.interfaces_.count(key) || model.classes_.count(key)) {
            throw Error(ErrorKind::DuplicateTypeName,
                        "duplicate type name: " + key);
        }
        model.classes_.emplace(key, std::move(decl));
    }

    // Canonicalize method order and enforce per-interface signature
    // uniqueness (duplicates are dropped, counted, first in order kept).
    for (auto& [key, decl] : model.interfaces_) {
        std::stable_sort(decl.methods.begin(), decl.methods.end(), method_order);
        std::vector<MethodDecl> unique;
        unique.reserve(decl.methods.size());
        for (auto& m : decl.methods) {
            m.owner = decl.ref;
            m.is_public = true;
            m.is_abstract = true;
            m.loc = 0;
            if (!unique.empty() && unique.back().signature == m.signature) {
                ++model.warnings_.duplicate_signatures;
                continue;
            }
            unique.push_back(std::move(m));
        }
        decl.methods = std::move(unique);
    }
    for (auto& [key, decl] : model.classes_) {
        std::stable_sort(decl.methods.begin(), decl.methods.end(), method_order);
        for (auto& m : decl.methods) {
            m.owner = decl.ref;
            if (m.is_abstract) m.loc = 0;
        }
    }

    // Hierarchy edge resolution. Unresolved targets stay recorded on the
    // declarations but never enter a closure; cross-kind edges are dropped
    // from closures the same way.
    std::map<std::string, std::vector<std::string>> iface_extends;
    for (const auto& [key, decl] : model.interfaces_) {
        auto& targets = iface_extends[key];
        for (const auto& super : decl.extends) {
            const std::string sq = super.qualified();
            if (sq == key) {
                throw Error(ErrorKind::CyclicHierarchy,
                            "interface extends itself: " + key);
            }
            if (model.interfaces_.count(sq)) {
                targets.push_back(sq);
            } else if (model.classes_.count(sq)) {
                ++model.warnings_.cross_kind_edges;
            } else {
                ++model.warnings_.external_supertypes;
            }
        }
    }
    std::map<std::string, std::vector<std::string>> class_extends;
    std::map<std::string, std::vector<std::string>> class_implements;
    for (const auto& [key, decl] : model.classes_) {
        auto& supers = class_extends[key];
        if (decl.extends) {
            const std::string sq = decl.extends->qualified();
            if (sq == key) {
                throw Error(ErrorKind::CyclicHierarchy,
                            "class extends itself: " + key);
            }
            if (model.classes_.count(sq)) {
                supers.push_back(sq);
            } else if (model.interfaces_.count(sq)) {
                ++model.warnings_.cross_kind_edges;
            } else {
                ++model.warnings_.external_supertypes;
            }
        }
        auto& impls = class_implements[key];
        for (const auto& iface : decl.implements) {
            const std::string iq = iface.qualified();
            if (model.interfaces_.count(iq)) {
                impls.push_back(iq);
            } else if (model.classes_.count(iq)) {
                ++model.warnings_.cross_kind_edges;
            } else {
                ++model.warnings_.external_supertypes;
            }
        }
    }

    for (const auto& [key, _] : model.interfaces_) {
        CycleFinder finder{iface_extends, {}};
        if (finder.has_cycle(key)) {
            throw Error(ErrorKind::CyclicHierarchy,
                        "extends cycle through interface " + key);
        }
    }
    for (const auto& [key, _] : model.classes_) {
        CycleFinder finder{class_extends, {}};
        if (finder.has_cycle(key)) {
            throw Error(ErrorKind::CyclicHierarchy,
                        "extends cycle through class " + key);
        }
    }

    // Calls: drop records whose caller is not a declared class or whose
    // receiver is not a declared type.
    for (auto& call : calls) {
        if (!model.classes_.count(call.caller.qualified()) ||
            !model.has_type(call.receiver_type.qualified())) {
            ++model.warnings_.dropped_calls;
            continue;
        }
        model.calls_.push_back(std::move(call));
    }

    model.build_indexes();
    return model;
}

void CodeModel::build_indexes() {
    // Resolved super-interfaces per interface (direct, declared only).
    std::map<std::string, std::vector<std::string>> direct_supers;
    for (const auto& [key, decl] : interfaces_) {
        auto& supers = direct_supers[key];
        for (const auto& super : decl.extends) {
            const std::string sq = super.qualified();
            if (interfaces_.count(sq)) supers.push_back(sq);
        }
    }

    // Transitive super-interface closure via memoized DFS (acyclic by now).
    std::map<std::string, std::set<std::string>> ancestors;
    auto collect_ancestors = [&](auto&& self, const std::string& node) -> const std::set<std::string>& {
        auto found = ancestors.find(node);
        if (found != ancestors.end()) return found->second;
        std::set<std::string> acc;
        for (const auto& super : direct_supers[node]) {
            acc.insert(super);
            const auto& above = self(self, super);
            acc.insert(above.begin(), above.end());
        }
        return ancestors.emplace(node, std::move(acc)).first->second;
    };
    for (const auto& [key, _] : interfaces_) {
        collect_ancestors(collect_ancestors, key);
        sub_interfaces_[key]; // ensure entry
    }
    for (const auto& [key, supers] : ancestors) {
        for (const auto& super : supers) sub_interfaces_[super].insert(key);
    }

    // Superclass chain per class.
    std::map<std::string, std::vector<std::string>> chain;
    auto superclass_chain = [&](auto&& self, const std::string& node) -> const std::vector<std::string>& {
        auto found = chain.find(node);
        if (found != chain.end()) return found->second;
        std::vector<std::string> acc{node};
        const ClassDecl& decl = classes_.at(node);
        if (decl.extends) {
            const std::string sq = decl.extends->qualified();
            if (classes_.count(sq)) {
                const auto& above = self(self, sq);
                acc.insert(acc.end(), above.begin(), above.end());
            }
        }
        return chain.emplace(node, std::move(acc)).first->second;
    };

    // reachable_interfaces: for a class, every interface implemented along
    // the superclass chain plus those interfaces' ancestors; for an
    // interface, itself plus its ancestors.
    for (const auto& [key, _] : interfaces_) {
        auto& reach = reachable_[key];
        reach.insert(key);
        const auto& above = ancestors[key];
        reach.insert(above.begin(), above.end());
    }
    for (const auto& [key, decl] : classes_) {
        auto& reach = reachable_[key];
        for (const auto& link : superclass_chain(superclass_chain, key)) {
            for (const auto& iface : classes_.at(link).implements) {
                const std::string iq = iface.qualified();
                if (!interfaces_.count(iq)) continue;
                reach.insert(iq);
                const auto& above = ancestors[iq];
                reach.insert(above.begin(), above.end());
            }
        }
    }

    // implementations(i) = classes whose reachable set contains i.
    for (const auto& [key, _] : interfaces_) implementations_[key];
    for (const auto& [cls, reach] : reachable_) {
        if (!classes_.count(cls)) continue;
        for (const auto& iface : reach) implementations_[iface].insert(cls);
    }

    // Override map: declaration -> concrete public methods with an equal
    // signature in the implementation classes.
    for (const auto& [key, decl] : interfaces_) {
        auto& per_decl = override_map_[key];
        per_decl.resize(decl.methods.size());
        for (std::size_t d = 0; d < decl.methods.size(); ++d) {
            const auto& sig = decl.methods[d].signature;
            for (const auto& cls : implementations_[key]) {
                const ClassDecl& impl = classes_.at(cls);
                for (std::size_t m = 0; m < impl.methods.size(); ++m) {
                    const MethodDecl& method = impl.methods[m];
                    if (method.is_public && !method.is_abstract &&
                        method.signature == sig) {
                        per_decl[d].push_back(MethodRef{cls, m});
                    }
                }
            }
        }
    }

    // Reaching callers per declaration: name + arity match and receiver in
    // {i} + sub_interfaces(i) + implementations(i).
    std::map<std::string, std::map<std::pair<std::string, std::size_t>, std::vector<std::size_t>>> by_name_arity;
    for (const auto& [key, decl] : interfaces_) {
        auto& table = by_name_arity[key];
        for (std::size_t d = 0; d < decl.methods.size(); ++d) {
            const auto& sig = decl.methods[d].signature;
            table[{sig.name, sig.arity()}].push_back(d);
        }
        callers_[key].resize(decl.methods.size());
    }
    for (const auto& call : calls_) {
        const auto& reach = reachable_.at(call.receiver_type.qualified());
        for (const auto& iface : reach) {
            auto& table = by_name_arity[iface];
            auto hit = table.find({call.method_name,
                                   static_cast<std::size_t>(call.arg_count)});
            if (hit == table.end()) continue;
            for (std::size_t d : hit->second) {
                callers_[iface][d].insert(call.caller.qualified());
            }
        }
    }
}

bool CodeModel::has_interface(const std::string& qualified) const {
    return interfaces_.count(qualified) > 0;
}

bool CodeModel::has_class(const std::string& qualified) const {
    return classes_.count(qualified) > 0;
}

bool CodeModel::has_type(const std::string& qualified) const {
    return has_interface(qualified) || has_class(qualified);
}

const InterfaceDecl& CodeModel::interface_at(const std::string& qualified) const {
    auto it = interfaces_.find(qualified);
    if (it == interfaces_.end()) {
        throw Error(ErrorKind::UnknownType, "unknown interface: " + qualified);
    }
    return it->second;
}

const ClassDecl& CodeModel::class_at(const std::string& qualified) const {
    auto it = classes_.find(qualified);
    if (it == classes_.end()) {
        throw Error(ErrorKind::UnknownType, "unknown class: " + qualified);
    }
    return it->second;
}

const MethodDecl& CodeModel::method_at(const MethodRef& ref) const {
    const ClassDecl& decl = class_at(ref.owner);
    return decl.methods.at(ref.method_index);
}

const std::set<std::string>& CodeModel::require_interface_entry(
    const std::string& iface,
    const std::map<std::string, std::set<std::string>>& table) const {
    auto it = table.find(iface);
    if (it == table.end()) {
        throw Error(ErrorKind::UnknownType, "unknown interface: " + iface);
    }
    return it->second;
}

const std::set<std::string>& CodeModel::sub_interfaces(const std::string& iface) const {
    return require_interface_entry(iface, sub_interfaces_);
}

const std::set<std::string>& CodeModel::implementations(const std::string& iface) const {
    return require_interface_entry(iface, implementations_);
}

bool CodeModel::reaches(const CallRecord& call, const std::string& iface,
                        const MethodDecl& decl) const {
    if (call.method_name != decl.signature.name) return false;
    if (static_cast<std::size_t>(call.arg_count) != decl.signature.arity()) return false;
    const std::string receiver = call.receiver_type.qualified();
    if (receiver == iface) return true;
    if (sub_interfaces(iface).count(receiver)) return true;
    return implementations(iface).count(receiver) > 0;
}

std::set<std::string> CodeModel::clients(const std::string& iface) const {
    const auto& impls = implementations(iface);
    const auto& per_decl = callers_.at(iface);
    std::set<std::string> out;
    for (const auto& callers : per_decl) {
        for (const auto& caller : callers) {
            if (!impls.count(caller)) out.insert(caller);
        }
    }
    return out;
}

const std::vector<MethodRef>& CodeModel::overriding_methods(
    const std::string& iface, std::size_t decl_index) const {
    auto it = override_map_.find(iface);
    if (it == override_map_.end()) {
        throw Error(ErrorKind::UnknownType, "unknown interface: " + iface);
    }
    return it->second.at(decl_index);
}

const std::set<std::string>& CodeModel::reaching_callers(
    const std::string& iface, std::size_t decl_index) const {
    auto it = callers_.find(iface);
    if (it == callers_.end()) {
        throw Error(ErrorKind::UnknownType, "unknown interface: " + iface);
    }
    return it->second.at(decl_index);
}

const std::set<std::string>& CodeModel::reachable_interfaces(
    const std::string& type) const {
    auto it = reachable_.find(type);
    if (it == reachable_.end()) {
        throw Error(ErrorKind::UnknownType, "unknown type: " + type);
    }
    return it->second;
}

} // namespace ifacelint

#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ifacelint/error.hpp"

namespace ifacelint {

/// Identity of a declared (or external) reference type. `qualified()` is the
/// key every model lookup uses; it is unique per declared type in one model.
struct TypeRef {
    std::string package;     // dotted, possibly empty
    std::string simple_name; // never empty

    std::string qualified() const {
        return package.empty() ? simple_name : package + "." + simple_name;
    }

    /// Split a dotted qualified name at its last dot.
    static TypeRef from_qualified(const std::string& qualified);

    friend bool operator==(const TypeRef&, const TypeRef&) = default;
    friend auto operator<=>(const TypeRef& a, const TypeRef& b) {
        return a.qualified() <=> b.qualified();
    }
};

/// Strip all whitespace and rewrite `T [ ]` suffixes to `T[]`. Idempotent.
std::string canonical_type_name(const std::string& raw);

/// The unit of clone detection: return type, name and the ordered parameter
/// type list, all canonicalized. Equality is componentwise.
struct MethodSignature {
    std::string return_type;
    std::string name;
    std::vector<std::string> param_types;

    static MethodSignature make(const std::string& return_type,
                                const std::string& name,
                                const std::vector<std::string>& param_types);

    /// Canonical rendering `return name(p1,p2)`; also the clone-group key.
    std::string text() const;

    std::size_t arity() const { return param_types.size(); }

    friend bool operator==(const MethodSignature&, const MethodSignature&) = default;
    friend bool operator<(const MethodSignature& a, const MethodSignature& b) {
        return a.text() < b.text();
    }
};

struct MethodDecl {
    TypeRef owner;
    MethodSignature signature;
    long loc = 0; // physical lines; 0 for abstract declarations
    bool is_public = true;
    bool is_abstract = false;

    friend bool operator==(const MethodDecl&, const MethodDecl&) = default;
};

struct InterfaceDecl {
    TypeRef ref;
    std::set<TypeRef> extends; // interfaces, possibly external
    std::vector<MethodDecl> methods;
    bool is_test = false;

    int size() const { return static_cast<int>(methods.size()); }

    friend bool operator==(const InterfaceDecl&, const InterfaceDecl&) = default;
};

struct ClassDecl {
    TypeRef ref;
    std::optional<TypeRef> extends; // superclass, possibly external
    std::set<TypeRef> implements;   // interfaces, possibly external
    std::vector<MethodDecl> methods;
    bool is_test = false;
    bool is_abstract = false;

    friend bool operator==(const ClassDecl&, const ClassDecl&) = default;
};

/// One message send with a statically declared receiver type.
struct CallRecord {
    TypeRef caller;        // class containing the call site
    TypeRef receiver_type; // declared type of the receiver expression
    std::string method_name;
    int arg_count = 0;

    friend bool operator==(const CallRecord&, const CallRecord&) = default;
};

/// Identifies one concrete method inside a built model.
struct MethodRef {
    std::string owner; // qualified class name
    std::size_t method_index = 0;

    friend bool operator==(const MethodRef&, const MethodRef&) = default;
    friend auto operator<=>(const MethodRef&, const MethodRef&) = default;
};

/// Ingest bookkeeping: inputs tolerated but excluded from the model.
struct ModelWarnings {
    long external_supertypes = 0;   // extends/implements targets not declared
    long cross_kind_edges = 0;      // class extends interface and the like
    long dropped_calls = 0;         // unresolvable caller or receiver
    long duplicate_signatures = 0;  // repeated signature inside one interface

    long total() const {
        return external_supertypes + cross_kind_edges + dropped_calls +
               duplicate_signatures;
    }
};

/// Immutable snapshot of interfaces, classes, hierarchy edges and call
/// records, with the derived indexes every analysis reads. Safe for
/// concurrent reads once built; nothing mutates a built model.
class CodeModel {
public:
    CodeModel() = default;

    /// Validates and indexes the declaration set. Referenced types that do
    /// not resolve within the input are kept as external: they stay in the
    /// declaration fields but contribute nothing to any closure. Throws
    /// Error(CyclicHierarchy) and Error(DuplicateTypeName).
    static CodeModel build(std::vector<InterfaceDecl> interfaces,
                           std::vector<ClassDecl> classes,
                           std::vector<CallRecord> calls,
                           long system_loc);

    const std::map<std::string, InterfaceDecl>& interfaces() const { return interfaces_; }
    const std::map<std::string, ClassDecl>& classes() const { return classes_; }
    const std::vector<CallRecord>& calls() const { return calls_; }
    long system_loc() const { return system_loc_; }
    const ModelWarnings& warnings() const { return warnings_; }

    bool has_interface(const std::string& qualified) const;
    bool has_class(const std::string& qualified) const;
    bool has_type(const std::string& qualified) const;

    const InterfaceDecl& interface_at(const std::string& qualified) const;
    const ClassDecl& class_at(const std::string& qualified) const;
    const MethodDecl& method_at(const MethodRef& ref) const;

    /// All interfaces whose extends-closure contains `iface`, excluding
    /// `iface` itself. Throws Error(UnknownType).
    const std::set<std::string>& sub_interfaces(const std::string& iface) const;

    /// Every class that implements `iface` or one of its sub-interfaces,
    /// directly or through class inheritance, plus all their subclasses.
    const std::set<std::string>& implementations(const std::string& iface) const;

    /// True iff the call's name and arity match `decl` and the receiver type
    /// is `iface`, one of its sub-interfaces, or one of its implementations.
    bool reaches(const CallRecord& call, const std::string& iface,
                 const MethodDecl& decl) const;

    /// Classes outside implementations(iface) with at least one call record
    /// reaching some method of the interface.
    std::set<std::string> clients(const std::string& iface) const;

    /// Concrete public methods overriding the declaration at `decl_index`
    /// of `iface`. A concrete method can appear under several declarations.
    const std::vector<MethodRef>& overriding_methods(const std::string& iface,
                                                     std::size_t decl_index) const;

    /// Classes with at least one call record reaching the declaration
    /// (implementing classes included).
    const std::set<std::string>& reaching_callers(const std::string& iface,
                                                  std::size_t decl_index) const;

    /// Interfaces whose methods a call with this receiver type can reach.
    const std::set<std::string>& reachable_interfaces(const std::string& type) const;

    /// Declaration-field equality; derived indexes and warnings are excluded
    /// (they are pure functions of the declarations).
    friend bool operator==(const CodeModel& a, const CodeModel& b) {
        return a.interfaces_ == b.interfaces_ && a.classes_ == b.classes_ &&
               a.calls_ == b.calls_ && a.system_loc_ == b.system_loc_;
    }

private:
    void build_indexes();
    const std::set<std::string>& require_interface_entry(
        const std::string& iface,
        const std::map<std::string, std::set<std::string>>& table) const;

    std::map<std::string, InterfaceDecl> interfaces_;
    std::map<std::string, ClassDecl> classes_;
    std::vector<CallRecord> calls_;
    long system_loc_ = 0;
    ModelWarnings warnings_;

    // derived, rebuilt deterministically from the declaration fields
    std::map<std::string, std::set<std::string>> sub_interfaces_;
    std::map<std::string, std::set<std::string>> implementations_;
    std::map<std::string, std::set<std::string>> reachable_;
    std::map<std::string, std::vector<std::vector<MethodRef>>> override_map_;
    std::map<std::string, std::vector<std::set<std::string>>> callers_;
};

} // namespace ifacelint

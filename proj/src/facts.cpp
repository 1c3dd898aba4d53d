#include "ifacelint/facts.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

#include <json.hpp>

namespace ifacelint {

namespace {

using nlohmann::json;

struct PendingMethod {
    std::string owner;
    MethodDecl decl;
    long line = 0;
};

void violation(std::vector<ParseDiagnostic>& diags, const std::string& name,
               long line, const std::string& message) {
    diags.push_back({name, line, Severity::Error, "SchemaViolation: " + message});
}

const json* field(const json& record, const char* key) {
    auto it = record.find(key);
    return it == record.end() ? nullptr : &*it;
}

bool get_string(const json& record, const char* key, std::string& out,
                std::string& why) {
    const json* value = field(record, key);
    if (!value) {
        why = std::string("missing required field \"") + key + "\"";
        return false;
    }
    if (!value->is_string()) {
        why = std::string("field \"") + key + "\" must be a string";
        return false;
    }
    out = value->get<std::string>();
    return true;
}

bool get_int(const json& record, const char* key, long& out, std::string& why) {
    const json* value = field(record, key);
    if (!value) {
        why = std::string("missing required field \"") + key + "\"";
        return false;
    }
    if (!value->is_number_integer()) {
        why = std::string("field \"") + key + "\" must be an integer";
        return false;
    }
    out = value->get<long>();
    return true;
}

bool get_bool(const json& record, const char* key, bool& out, std::string& why) {
    const json* value = field(record, key);
    if (!value) {
        why = std::string("missing required field \"") + key + "\"";
        return false;
    }
    if (!value->is_boolean()) {
        why = std::string("field \"") + key + "\" must be a boolean";
        return false;
    }
    out = value->get<bool>();
    return true;
}

bool get_opt_bool(const json& record, const char* key, bool fallback, bool& out,
                  std::string& why) {
    const json* value = field(record, key);
    if (!value) {
        out = fallback;
        return true;
    }
    if (!value->is_boolean()) {
        why = std::string("field \"") + key + "\" must be a boolean";
        return false;
    }
    out = value->get<bool>();
    return true;
}

bool get_string_list(const json& record, const char* key,
                     std::vector<std::string>& out, std::string& why) {
    const json* value = field(record, key);
    if (!value) {
        why = std::string("missing required field \"") + key + "\"";
        return false;
    }
    if (!value->is_array()) {
        why = std::string("field \"") + key + "\" must be an array of strings";
        return false;
    }
    for (const auto& entry : *value) {
        if (!entry.is_string()) {
            why = std::string("field \"") + key + "\" must be an array of strings";
            return false;
        }
        out.push_back(entry.get<std::string>());
    }
    return true;
}

} // namespace

FactsResult parse_facts(std::istream& in, const std::string& stream_name) {
    FactsResult result;
    std::vector<PendingMethod> methods;
    bool meta_seen = false;
    long meta_loc = 0;

    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;

        json record = json::parse(line, nullptr, false);
        if (record.is_discarded() || !record.is_object()) {
            violation(result.diagnostics, stream_name, lineno,
                      "line is not a JSON object");
            continue;
        }
        std::string kind, why;
        if (!get_string(record, "kind", kind, why)) {
            violation(result.diagnostics, stream_name, lineno, why);
            continue;
        }

        if (kind == "interface") {
            std::string name, package;
            std::vector<std::string> extends;
            bool is_test = false;
            if (!get_string(record, "name", name, why) ||
                !get_string(record, "package", package, why) ||
                !get_string_list(record, "extends", extends, why) ||
                !get_opt_bool(record, "is_test", false, is_test, why)) {
                violation(result.diagnostics, stream_name, lineno, why);
                continue;
            }
            if (name.empty()) {
                violation(result.diagnostics, stream_name, lineno,
                          "interface name must not be empty");
                continue;
            }
            InterfaceDecl decl;
            decl.ref = TypeRef{package, name};
            for (const auto& super : extends) {
                decl.extends.insert(TypeRef::from_qualified(super));
            }
            decl.is_test = is_test;
            result.interfaces.push_back(std::move(decl));
        } else if (kind == "class") {
            std::string name, package;
            std::vector<std::string> implements;
            bool is_test = false, is_abstract = false;
            if (!get_string(record, "name", name, why) ||
                !get_string(record, "package", package, why) ||
                !get_string_list(record, "implements", implements, why) ||
                !get_opt_bool(record, "is_test", false, is_test, why) ||
                !get_opt_bool(record, "is_abstract", false, is_abstract, why)) {
                violation(result.diagnostics, stream_name, lineno, why);
                continue;
            }
            if (name.empty()) {
                violation(result.diagnostics, stream_name, lineno,
                          "class name must not be empty");
                continue;
            }
            const json* extends = field(record, "extends");
            if (!extends) {
                violation(result.diagnostics, stream_name, lineno,
                          "missing required field \"extends\"");
                continue;
            }
            if (!extends->is_null() && !extends->is_string()) {
                violation(result.diagnostics, stream_name, lineno,
                          "field \"extends\" must be a string or null");
                continue;
            }
            ClassDecl decl;
            decl.ref = TypeRef{package, name};
            if (extends->is_string()) {
                decl.extends = TypeRef::from_qualified(extends->get<std::string>());
            }
            for (const auto& iface : implements) {
                decl.implements.insert(TypeRef::from_qualified(iface));
            }
            decl.is_test = is_test;
            decl.is_abstract = is_abstract;
            result.classes.push_back(std::move(decl));
        } else if (kind == "method") {
            std::string owner, name, return_type;
            std::vector<std::string> params;
            bool is_public = false, is_abstract = false;
            long loc = 0;
            if (!get_string(record, "owner", owner, why) ||
                !get_string(record, "name", name, why) ||
                !get_string(record, "return", return_type, why) ||
                !get_string_list(record, "params", params, why) ||
                !get_bool(record, "public", is_public, why) ||
                !get_bool(record, "abstract", is_abstract, why) ||
                !get_int(record, "loc", loc, why)) {
                violation(result.diagnostics, stream_name, lineno, why);
                continue;
            }
            if (loc < 0) {
                violation(result.diagnostics, stream_name, lineno,
                          "field \"loc\" must be >= 0");
                continue;
            }
            if (is_abstract && loc != 0) {
                violation(result.diagnostics, stream_name, lineno,
                          "abstract method must have loc 0");
                continue;
            }
            PendingMethod pending;
            pending.owner = owner;
            pending.line = lineno;
            pending.decl.signature = MethodSignature::make(return_type, name, params);
            pending.decl.is_public = is_public;
            pending.decl.is_abstract = is_abstract;
            pending.decl.loc = loc;
            methods.push_back(std::move(pending));
        } else if (kind == "call") {
            std::string caller, receiver, method;
            long argc = 0;
            if (!get_string(record, "caller", caller, why) ||
                !get_string(record, "receiver", receiver, why) ||
                !get_string(record, "method", method, why) ||
                !get_int(record, "argc", argc, why)) {
                violation(result.diagnostics, stream_name, lineno, why);
                continue;
            }
            if (argc < 0) {
                violation(result.diagnostics, stream_name, lineno,
                          "field \"argc\" must be >= 0");
                continue;
            }
            result.calls.push_back({TypeRef::from_qualified(caller),
                                    TypeRef::from_qualified(receiver), method,
                                    static_cast<int>(argc)});
        } else if (kind == "meta") {
            long loc = 0;
            if (!get_int(record, "system_loc", loc, why)) {
                violation(result.diagnostics, stream_name, lineno, why);
                continue;
            }
            if (meta_seen) {
                violation(result.diagnostics, stream_name, lineno,
                          "duplicate meta record");
                continue;
            }
            meta_seen = true;
            meta_loc = loc;
        } else {
            violation(result.diagnostics, stream_name, lineno,
                      "unknown kind \"" + kind + "\"");
        }
    }

    // attach methods to their owners by qualified name
    std::map<std::string, InterfaceDecl*> ifaces;
    std::map<std::string, ClassDecl*> classes;
    for (auto& decl : result.interfaces) ifaces.emplace(decl.ref.qualified(), &decl);
    for (auto& decl : result.classes) classes.emplace(decl.ref.qualified(), &decl);

    long method_loc_sum = 0;
    for (auto& pending : methods) {
        auto iface = ifaces.find(pending.owner);
        if (iface != ifaces.end()) {
            if (!pending.decl.is_public || !pending.decl.is_abstract) {
                violation(result.diagnostics, stream_name, pending.line,
                          "interface method must be public and abstract");
                continue;
            }
            pending.decl.owner = iface->second->ref;
            method_loc_sum += pending.decl.loc;
            iface->second->methods.push_back(std::move(pending.decl));
            continue;
        }
        auto cls = classes.find(pending.owner);
        if (cls != classes.end()) {
            pending.decl.owner = cls->second->ref;
            method_loc_sum += pending.decl.loc;
            cls->second->methods.push_back(std::move(pending.decl));
            continue;
        }
        violation(result.diagnostics, stream_name, pending.line,
                  "method owner not declared: " + pending.owner);
    }

    result.system_loc = meta_seen ? meta_loc : method_loc_sum;
    return result;
}

FactsResult parse_facts(const std::string& text, const std::string& stream_name) {
    std::istringstream in(text);
    return parse_facts(in, stream_name);
}

std::string emit_facts(const CodeModel& model) {
    // kind order: call < class < interface < meta < method; classes and
    // interfaces by qualified name; methods by (owner, signature text);
    // calls keep model order.
    std::string out;
    auto append = [&out](const json& record) {
        out += record.dump();
        out += '\n';
    };

    for (const auto& call : model.calls()) {
        append(json{{"kind", "call"},
                    {"caller", call.caller.qualified()},
                    {"receiver", call.receiver_type.qualified()},
                    {"method", call.method_name},
                    {"argc", call.arg_count}});
    }
    for (const auto& [key, decl] : model.classes()) {
        json record{{"kind", "class"},
                    {"name", decl.ref.simple_name},
                    {"package", decl.ref.package}};
        if (decl.extends) {
            record["extends"] = decl.extends->qualified();
        } else {
            record["extends"] = nullptr;
        }
        json implements = json::array();
        for (const auto& iface : decl.implements) implements.push_back(iface.qualified());
        record["implements"] = implements;
        record["is_abstract"] = decl.is_abstract;
        record["is_test"] = decl.is_test;
        append(record);
    }
    for (const auto& [key, decl] : model.interfaces()) {
        json extends = json::array();
        for (const auto& super : decl.extends) extends.push_back(super.qualified());
        append(json{{"kind", "interface"},
                    {"name", decl.ref.simple_name},
                    {"package", decl.ref.package},
                    {"extends", extends},
                    {"is_test", decl.is_test}});
    }
    append(json{{"kind", "meta"}, {"system_loc", model.system_loc()}});

    std::vector<const MethodDecl*> methods;
    for (const auto& [key, decl] : model.interfaces()) {
        for (const auto& m : decl.methods) methods.push_back(&m);
    }
    for (const auto& [key, decl] : model.classes()) {
        for (const auto& m : decl.methods) methods.push_back(&m);
    }
    std::stable_sort(methods.begin(), methods.end(),
                     [](const MethodDecl* a, const MethodDecl* b) {
                         auto ka = std::tuple(a->owner.qualified(), a->signature.text(),
                                              a->loc, a->is_public, a->is_abstract);
                         auto kb = std::tuple(b->owner.qualified(), b->signature.text(),
                                              b->loc, b->is_public, b->is_abstract);
                         return ka < kb;
                     });
    for (const MethodDecl* m : methods) {
        json params = json::array();
        for (const auto& p : m->signature.param_types) params.push_back(p);
        append(json{{"kind", "method"},
                    {"owner", m->owner.qualified()},
                    {"name", m->signature.name},
                    {"return", m->signature.return_type},
                    {"params", params},
                    {"public", m->is_public},
                    {"abstract", m->is_abstract},
                    {"loc", m->loc}});
    }
    return out;
}

} // namespace ifacelint

#pragma once

#include <string>
#include <vector>

#include "ifacelint/model.hpp"

namespace ifacelint {

enum class Severity { Warning, Error };

struct ParseDiagnostic {
    std::string path;
    long line = 0;
    Severity severity = Severity::Warning;
    std::string message;

    friend bool operator==(const ParseDiagnostic&, const ParseDiagnostic&) = default;
};

struct SourceFile {
    std::string path;
    std::string text;
};

/// Everything a parse batch produces; feed the declaration lists and calls
/// straight into CodeModel::build.
struct ParseResult {
    std::vector<InterfaceDecl> interfaces;
    std::vector<ClassDecl> classes;
    std::vector<CallRecord> calls;
    long system_loc = 0;
    std::vector<ParseDiagnostic> diagnostics;

    long error_count() const;
    long warning_count() const;
};

/// Syntactic frontend for a curly-brace object-oriented subset. Files are
/// processed in path order; per-file failures (bad encoding, unbalanced
/// braces) become error diagnostics and never abort the batch. Interface
/// methods come out abstract with loc 0; concrete methods carry
/// loc = closing-brace line - signature line + 1. Call records are emitted
/// for receivers that are `this`, a parameter, a local variable, a field of
/// the enclosing class, or a resolvable type name; unqualified calls get the
/// enclosing class as receiver. Test flags are set batch-wide (package
/// segment `test`/`tests`, or an extends chain hitting `TestCase`).
ParseResult parse_source(std::vector<SourceFile> files);

/// Name-resolution context for test classification: the declaration batch.
struct TypeBatch {
    const std::vector<InterfaceDecl>* interfaces = nullptr;
    const std::vector<ClassDecl>* classes = nullptr;

    const ClassDecl* find_class(const std::string& qualified) const;
};

/// True when the package path contains a `test`/`tests` segment.
bool test_package(const std::string& package);

/// Classes: extends chain contains a type whose simple name is `TestCase`,
/// or the package rule above. Interfaces: the package rule (the
/// implementations-based rule needs a built model and lives with the
/// filters).
bool classify_test(const ClassDecl& decl, const TypeBatch& batch);
bool classify_test(const InterfaceDecl& decl, const TypeBatch& batch);

} // namespace ifacelint

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ifacelint/model.hpp"
#include "ifacelint/source_parser.hpp"

namespace ifacelint {

/// Result of reading a facts stream. Records that violate the schema are
/// skipped and reported as error diagnostics carrying the line number; the
/// caller decides how many violations it tolerates.
struct FactsResult {
    std::vector<InterfaceDecl> interfaces;
    std::vector<ClassDecl> classes;
    std::vector<CallRecord> calls;
    long system_loc = 0;
    std::vector<ParseDiagnostic> diagnostics;
};

/// Parse the line-oriented facts format (one object per line, UTF-8):
///   {"kind":"interface","name":..,"package":..,"extends":[..],"is_test":..}
///   {"kind":"class","name":..,"package":..,"extends":..|null,
///    "implements":[..],"is_abstract":..,"is_test":..}
///   {"kind":"method","owner":..,"name":..,"return":..,"params":[..],
///    "public":..,"abstract":..,"loc":..}
///   {"kind":"call","caller":..,"receiver":..,"method":..,"argc":..}
///   {"kind":"meta","system_loc":..}
/// Unknown fields are ignored; unknown kinds are schema violations. Method
/// records attach to their owner by qualified name. When no meta record is
/// present, system_loc defaults to the sum of method loc values.
FactsResult parse_facts(std::istream& in, const std::string& stream_name = "<facts>");
FactsResult parse_facts(const std::string& text, const std::string& stream_name = "<facts>");

/// Deterministic serialization: records sorted by (kind, qualified name,
/// signature text, call order). Parsing the emission rebuilds an equal
/// model; emissions of equal models are byte-identical.
std::string emit_facts(const CodeModel& model);

} // namespace ifacelint

#pragma once

#include <string>
#include <vector>

#include "ifacelint/model.hpp"

namespace fixtures {

struct Decls {
    std::vector<ifacelint::InterfaceDecl> interfaces;
    std::vector<ifacelint::ClassDecl> classes;
    std::vector<ifacelint::CallRecord> calls;
    long system_loc = 0;

    ifacelint::CodeModel build() const;
};

// abstract interface method (owner filled in by the model build)
ifacelint::MethodDecl im(const std::string& ret, const std::string& name,
                         const std::vector<std::string>& params = {});

// concrete class method
ifacelint::MethodDecl cm(const std::string& ret, const std::string& name,
                         const std::vector<std::string>& params, long loc,
                         bool is_public = true);

ifacelint::CallRecord call(const std::string& caller, const std::string& receiver,
                           const std::string& method, int argc);

// Two collection interfaces sharing size/isEmpty/clear (13 + 12 methods).
Decls collections_pair();

// Four read/write-request interfaces declaring the same three signatures,
// two of them identical, plus the two implementing classes and one client.
Decls disk_request_quadruple();

// The 31-method download manager with two implementing classes, three
// clients, eight unused declarations (one of them internal-only) and pinned
// implementation line counts. Mirrors tests/fixtures/downloadmanager/.
Decls download_manager();

// Marker/test/orphan mix. Mirrors tests/fixtures/filters/.
Decls filter_zoo();

} // namespace fixtures

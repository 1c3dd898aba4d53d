#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "ifacelint/source_parser.hpp"

using namespace ifacelint;

namespace {

ParseResult parse_one(const std::string& text) {
    return parse_source({{"Test.java", text}});
}

std::vector<SourceFile> load_dir(const std::filesystem::path& dir) {
    std::vector<SourceFile> files;
    for (auto it = std::filesystem::recursive_directory_iterator(dir);
         it != std::filesystem::recursive_directory_iterator(); ++it) {
        if (!it->is_regular_file() || it->path().extension() != ".java") continue;
        std::ifstream in(it->path(), std::ios::binary);
        std::ostringstream text;
        text << in.rdbuf();
        files.push_back({it->path().lexically_relative(dir).generic_string(),
                         std::move(text).str()});
    }
    return files;
}

std::vector<CallRecord> sorted_calls(std::vector<CallRecord> calls) {
    std::sort(calls.begin(), calls.end(),
              [](const CallRecord& a, const CallRecord& b) {
                  return std::tuple(a.caller.qualified(), a.receiver_type.qualified(),
                                    a.method_name, a.arg_count) <
                         std::tuple(b.caller.qualified(), b.receiver_type.qualified(),
                                    b.method_name, b.arg_count);
              });
    return calls;
}

} // namespace

TEST_CASE("a lone interface method comes out abstract with loc 0") {
    auto result = parse_one("interface I { int size(); }");
    REQUIRE(result.interfaces.size() == 1);
    const InterfaceDecl& decl = result.interfaces.front();
    CHECK(decl.ref.qualified() == "I");
    REQUIRE(decl.methods.size() == 1);
    CHECK(decl.methods.front().signature.text() == "int size()");
    CHECK(decl.methods.front().is_abstract);
    CHECK(decl.methods.front().is_public);
    CHECK(decl.methods.front().loc == 0);
}

TEST_CASE("concrete method loc spans signature line through closing brace") {
    auto result = parse_one(
        "class C {\n"
        "    public int count() {\n" // line 2
        "        int n = 1;\n"
        "        n = n + 1;\n"
        "        return n;\n"
        "    }\n" // line 6 -> loc 5
        "}\n");
    REQUIRE(result.classes.size() == 1);
    REQUIRE(result.classes.front().methods.size() == 1);
    CHECK(result.classes.front().methods.front().loc == 5);
    CHECK(result.system_loc == 7);
}

TEST_CASE("local variable receivers resolve to their declared type") {
    auto result = parse_source(
        {{"a/DownloadManager.java",
          "package plugins;\n"
          "public interface DownloadManager { Download addDownload(URL u, URL r); }\n"},
         {"b/Feed.java",
          "package app;\n"
          "import plugins.DownloadManager;\n"
          "public class Feed {\n"
          "    public void pull() {\n"
          "        DownloadManager dm;\n"
          "        dm.addDownload(u1, u2);\n"
          "    }\n"
          "}\n"}});
    REQUIRE(result.calls.size() == 1);
    const CallRecord& call = result.calls.front();
    CHECK(call.caller.qualified() == "app.Feed");
    CHECK(call.receiver_type.qualified() == "plugins.DownloadManager");
    CHECK(call.method_name == "addDownload");
    CHECK(call.arg_count == 2);
}

TEST_CASE("receiver forms: this, field, parameter, type name, super") {
    auto result = parse_source(
        {{"Types.java",
          "public interface Svc { void ping(); }\n"
          "public class Registry { public void lookup(int key) { } }\n"},
         {"User.java",
          "public class Base { public void shared() { } }\n"
          "public class User extends Base {\n"
          "    private Svc svc;\n"
          "    public void go(Svc param) {\n"
          "        this.helper();\n"
          "        svc.ping();\n"
          "        this.svc.ping();\n"
          "        param.ping();\n"
          "        Registry.lookup(5);\n"
          "        super.shared();\n"
          "    }\n"
          "    public void helper() { }\n"
          "}\n"}});
    auto calls = sorted_calls(result.calls);
    REQUIRE(calls.size() == 6);
    CHECK(calls[0] == fixtures::call("User", "Base", "shared", 0));
    CHECK(calls[1] == fixtures::call("User", "Registry", "lookup", 1));
    CHECK(calls[2] == fixtures::call("User", "Svc", "ping", 0));
    CHECK(calls[3] == fixtures::call("User", "Svc", "ping", 0));
    CHECK(calls[4] == fixtures::call("User", "Svc", "ping", 0));
    CHECK(calls[5] == fixtures::call("User", "User", "helper", 0));
}

TEST_CASE("unqualified calls target the enclosing class") {
    auto result = parse_one(
        "class C {\n"
        "    public void a() { b(); }\n"
        "    public void b() { }\n"
        "}\n");
    REQUIRE(result.calls.size() == 1);
    CHECK(result.calls.front() == fixtures::call("C", "C", "b", 0));
}

TEST_CASE("chained call links and unresolvable receivers are skipped with counters") {
    auto result = parse_one(
        "class C {\n"
        "    private Helper helper;\n"
        "    public void run() {\n"
        "        helper.first().second();\n"
        "        unknownVar.third();\n"
        "    }\n"
        "}\n");
    // helper: unresolved type Helper; the .second() link is chained
    CHECK(result.calls.empty());
    bool chained = false, unresolved = false;
    for (const auto& d : result.diagnostics) {
        if (d.message.find("chained call link") != std::string::npos) chained = true;
        if (d.message.find("unresolvable receiver") != std::string::npos)
            unresolved = true;
    }
    CHECK(chained);
    CHECK(unresolved);
}

TEST_CASE("keywords, constructors and new-expressions are not message sends") {
    auto result = parse_one(
        "class C {\n"
        "    public C() {\n"
        "        super();\n"
        "    }\n"
        "    public void run(int n) {\n"
        "        if (n > 0) {\n"
        "            for (int i = 0; i < n; i = i + 1) {\n"
        "                while (check(i)) {\n"
        "                    C fresh = new C();\n"
        "                }\n"
        "            }\n"
        "        }\n"
        "        return;\n"
        "    }\n"
        "    public boolean check(int v) { return v > 1; }\n"
        "}\n");
    REQUIRE(result.calls.size() == 1); // only check(i)
    CHECK(result.calls.front() == fixtures::call("C", "C", "check", 1));
}

TEST_CASE("comments and string literals never produce declarations or calls") {
    auto result = parse_one(
        "// class Fake { void ghost(); }\n"
        "/* interface Phantom { }\n"
        "   spans lines */\n"
        "class C {\n"
        "    private String label = \"x.y(z); } {\";\n"
        "    public void go() {\n"
        "        label = \"no.call(here)\"; // other.call(gone)\n"
        "    }\n"
        "}\n");
    CHECK(result.interfaces.empty());
    REQUIRE(result.classes.size() == 1);
    CHECK(result.calls.empty());
    CHECK(result.system_loc == 9);
}

TEST_CASE("interface constants are ignored") {
    auto result = parse_one(
        "interface K {\n"
        "    int MAX = 10;\n"
        "    String NAME = \"k\";\n"
        "    void use();\n"
        "}\n");
    REQUIRE(result.interfaces.size() == 1);
    CHECK(result.interfaces.front().methods.size() == 1);
    CHECK(result.interfaces.front().methods.front().signature.text() == "void use()");
}

TEST_CASE("varargs parameters normalize to arrays") {
    auto result = parse_one("interface V { void log(String fmt, Object... args); }");
    REQUIRE(result.interfaces.size() == 1);
    CHECK(result.interfaces.front().methods.front().signature.text() ==
          "void log(String,Object[])");
}

TEST_CASE("duplicate signatures within one interface are dropped with a warning") {
    auto result = parse_one("interface D { void f(); void f(); int g(); }");
    REQUIRE(result.interfaces.size() == 1);
    CHECK(result.interfaces.front().methods.size() == 2);
    CHECK(std::any_of(result.diagnostics.begin(), result.diagnostics.end(),
                      [](const ParseDiagnostic& d) {
                          return d.message.find("duplicate signature") !=
                                 std::string::npos;
                      }));
}

TEST_CASE("unbalanced braces fail only the offending file") {
    auto result = parse_source({{"bad.java", "class Broken { void f() {\n"},
                                {"good.java", "interface Fine { void ok(); }\n"}});
    CHECK(result.interfaces.size() == 1);
    CHECK(result.classes.empty());
    REQUIRE(result.error_count() == 1);
    bool malformed = false;
    for (const auto& d : result.diagnostics) {
        if (d.severity == Severity::Error &&
            d.message.find("MalformedFile") != std::string::npos &&
            d.path == "bad.java") {
            malformed = true;
        }
    }
    CHECK(malformed);
    CHECK(result.system_loc == 2); // both files still count
}

TEST_CASE("invalid UTF-8 fails the file with an encoding diagnostic") {
    std::string bad = "interface X { void f(); }";
    bad += static_cast<char>(0xFF);
    auto result = parse_source({{"enc.java", bad}});
    CHECK(result.interfaces.empty());
    REQUIRE(result.error_count() == 1);
    CHECK(result.diagnostics.front().message.find("Encoding") != std::string::npos);
}

TEST_CASE("unsupported constructs degrade with diagnostics") {
    auto result = parse_one(
        "enum Mode { ON, OFF }\n"
        "@interface Anno { }\n"
        "interface I {\n"
        "    default int v() { return 3; }\n"
        "    class Nested { }\n"
        "    void keep();\n"
        "}\n");
    REQUIRE(result.interfaces.size() == 1);
    CHECK(result.interfaces.front().methods.size() == 2); // v() and keep()
    CHECK(result.warning_count() >= 3);
}

TEST_CASE("test classification: packages and TestCase chains") {
    auto result = parse_source(
        {{"a.java", "package org.app.tests.util;\npublic class Helper { }\n"},
         {"b.java",
          "package org.app.core;\nimport junit.framework.TestCase;\n"
          "public class LegacyTest extends TestCase { }\n"},
         {"c.java", "package org.app.core;\npublic class Plain { }\n"},
         {"d.java",
          "package org.app.core;\npublic class Derived extends LegacyTest { }\n"},
         {"e.java", "package org.app.tests;\npublic interface FakeIface { void p(); }\n"},
         {"f.java", "package org.app.core;\npublic interface RealIface { void q(); }\n"}});
    std::map<std::string, bool> classes, interfaces;
    for (const auto& decl : result.classes) {
        classes[decl.ref.qualified()] = decl.is_test;
    }
    for (const auto& decl : result.interfaces) {
        interfaces[decl.ref.qualified()] = decl.is_test;
    }
    CHECK(classes.at("org.app.tests.util.Helper"));
    CHECK(classes.at("org.app.core.LegacyTest"));
    CHECK(classes.at("org.app.core.Derived"));
    CHECK_FALSE(classes.at("org.app.core.Plain"));
    CHECK(interfaces.at("org.app.tests.FakeIface"));
    CHECK_FALSE(interfaces.at("org.app.core.RealIface"));
}

TEST_CASE("parsing is deterministic") {
    auto files = load_dir(std::filesystem::path(IFLINT_FIXTURE_DIR) / "downloadmanager");
    auto once = parse_source(files);
    auto twice = parse_source(files);
    CHECK(once.interfaces == twice.interfaces);
    CHECK(once.classes == twice.classes);
    CHECK(once.calls == twice.calls);
    CHECK(once.diagnostics == twice.diagnostics);
    CHECK(once.system_loc == twice.system_loc);
}

TEST_CASE("every concrete method loc is positive and bounded; callers are declared") {
    auto files = load_dir(std::filesystem::path(IFLINT_FIXTURE_DIR) / "downloadmanager");
    auto result = parse_source(files);
    for (const auto& decl : result.classes) {
        for (const auto& m : decl.methods) {
            if (m.is_abstract) {
                CHECK(m.loc == 0);
            } else {
                CHECK(m.loc >= 1);
                CHECK(m.loc <= result.system_loc);
            }
        }
    }
    std::set<std::string> declared;
    for (const auto& decl : result.classes) declared.insert(decl.ref.qualified());
    for (const auto& call : result.calls) {
        CHECK(declared.count(call.caller.qualified()));
    }
}

TEST_CASE("the parsed download manager fixture matches its in-memory twin") {
    auto files = load_dir(std::filesystem::path(IFLINT_FIXTURE_DIR) / "downloadmanager");
    auto parsed = parse_source(files);
    CHECK(parsed.error_count() == 0);
    CodeModel from_source = CodeModel::build(parsed.interfaces, parsed.classes,
                                             parsed.calls, parsed.system_loc);
    CodeModel programmatic = fixtures::download_manager().build();

    CHECK(from_source.interfaces() == programmatic.interfaces());
    CHECK(from_source.classes() == programmatic.classes());
    CHECK(sorted_calls(from_source.calls()) == sorted_calls(programmatic.calls()));
}

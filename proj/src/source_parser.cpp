#include "ifacelint/source_parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>

namespace ifacelint {

long ParseResult::error_count() const {
    return std::count_if(diagnostics.begin(), diagnostics.end(),
                         [](const ParseDiagnostic& d) { return d.severity == Severity::Error; });
}

long ParseResult::warning_count() const {
    return static_cast<long>(diagnostics.size()) - error_count();
}

namespace {

bool valid_utf8(const std::string& text) {
    const auto* s = reinterpret_cast<const unsigned char*>(text.data());
    std::size_t n = text.size();
    std::size_t i = 0;
    while (i < n) {
        unsigned char c = s[i];
        std::size_t extra;
        if (c < 0x80) extra = 0;
        else if ((c & 0xE0) == 0xC0 && c >= 0xC2) extra = 1;
        else if ((c & 0xF0) == 0xE0) extra = 2;
        else if ((c & 0xF8) == 0xF0 && c <= 0xF4) extra = 3;
        else return false;
        for (std::size_t k = 1; k <= extra; ++k) {
            if (i + k >= n || (s[i + k] & 0xC0) != 0x80) return false;
        }
        i += extra + 1;
    }
    return true;
}

long count_lines(const std::string& text) {
    if (text.empty()) return 0;
    long lines = static_cast<long>(std::count(text.begin(), text.end(), '\n'));
    if (text.back() != '\n') ++lines;
    return lines;
}

// Blank out comments and string/char literals, preserving offsets and
// newlines so token positions stay physical.
std::string mask_trivia(const std::string& text) {
    std::string out = text;
    std::size_t n = text.size();
    std::size_t i = 0;
    auto blank = [&](std::size_t j) {
        if (out[j] != '\n') out[j] = ' ';
    };
    while (i < n) {
        char c = text[i];
        if (c == '/' && i + 1 < n && text[i + 1] == '/') {
            while (i < n && text[i] != '\n') blank(i++);
        } else if (c == '/' && i + 1 < n && text[i + 1] == '*') {
            blank(i++);
            blank(i++);
            while (i < n && !(text[i] == '*' && i + 1 < n && text[i + 1] == '/')) blank(i++);
            if (i < n) { blank(i++); blank(i++); }
        } else if (c == '"' || c == '\'') {
            char quote = c;
            blank(i++);
            while (i < n && text[i] != quote && text[i] != '\n') {
                if (text[i] == '\\' && i + 1 < n) blank(i++);
                blank(i++);
            }
            if (i < n && text[i] == quote) blank(i++);
        } else {
            ++i;
        }
    }
    return out;
}

enum class TokKind { Ident, Number, Punct, End };

struct Token {
    TokKind kind = TokKind::End;
    std::string text; // idents and numbers
    char ch = 0;      // puncts
    long line = 1;
};

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool ident_char(char c) { return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)); }

std::vector<Token> tokenize(const std::string& masked) {
    std::vector<Token> out;
    long line = 1;
    std::size_t i = 0;
    const std::size_t n = masked.size();
    while (i < n) {
        char c = masked[i];
        if (c == '\n') {
            ++line;
            ++i;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (ident_start(c)) {
            std::size_t start = i;
            while (i < n && ident_char(masked[i])) ++i;
            out.push_back({TokKind::Ident, masked.substr(start, i - start), 0, line});
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = i;
            while (i < n && (ident_char(masked[i]) || masked[i] == '.')) ++i;
            out.push_back({TokKind::Number, masked.substr(start, i - start), 0, line});
        } else {
            out.push_back({TokKind::Punct, "", c, line});
            ++i;
        }
    }
    out.push_back({TokKind::End, "", 0, line});
    return out;
}

const std::set<std::string> kModifiers = {
    "public", "private", "protected", "static",   "final",    "abstract",
    "native", "strictfp", "transient", "volatile", "synchronized", "default"};

const std::set<std::string> kNotCalls = {"if",    "while", "for",   "switch",
                                         "catch", "synchronized", "assert",
                                         "this",  "super", "return", "throw", "new"};

struct RawCall {
    std::string receiver; // raw type name; "" = enclosing class
    bool via_super = false;
    std::string method;
    int argc = 0;
};

struct RawMethod {
    std::string return_type;
    std::string name;
    std::vector<std::string> params;
    bool is_public = false;
    bool is_abstract = false;
    long loc = 0;
    long line = 0;
};

struct RawType {
    bool is_interface = false;
    std::string name;
    std::vector<std::string> extends_names;
    std::vector<std::string> implements_names;
    std::vector<RawMethod> methods;
    std::vector<RawCall> calls;
    std::map<std::string, std::string> fields; // name -> raw type
    long unresolved_receivers = 0;
    long chained_links = 0;
};

struct RawFile {
    std::string path;
    std::string package;
    std::map<std::string, std::string> imports; // simple -> qualified
    std::vector<std::string> wildcard_imports;  // packages
    std::vector<RawType> types;
    long line_count = 0;
};

class FileParser {
public:
    FileParser(std::string path, const std::string& masked,
               std::vector<ParseDiagnostic>& diagnostics)
        : path_(std::move(path)), toks_(tokenize(masked)), diags_(diagnostics) {}

    RawFile run() {
        RawFile file;
        file.path = path_;
        while (!at_end()) {
            if (is_ident("package")) {
                next();
                file.package = read_dotted();
                expect_semi();
            } else if (is_ident("import")) {
                next();
                if (is_ident("static")) next();
                std::string target = read_dotted();
                if (is_punct('.') && peek().kind == TokKind::Punct && peek().ch == '*') {
                    next();
                    next();
                    file.wildcard_imports.push_back(target);
                } else {
                    auto dot = target.rfind('.');
                    std::string simple = dot == std::string::npos ? target : target.substr(dot + 1);
                    file.imports.emplace(simple, target);
                }
                expect_semi();
            } else if (is_punct('@')) {
                if (peek_is_ident(1, "interface")) {
                    warn(cur().line, "annotation type declaration skipped");
                    next();
                    next();
                    if (cur().kind == TokKind::Ident) next();
                    skip_to_block_or_semi();
                } else {
                    skip_annotation();
                }
            } else if (is_punct(';')) {
                next();
            } else if (cur().kind == TokKind::Ident && kModifiers.count(cur().text)) {
                next();
            } else if (is_ident("interface") || is_ident("class")) {
                bool is_interface = cur().text == "interface";
                long line = cur().line;
                next();
                parse_type(file, is_interface, line);
            } else if (is_ident("enum")) {
                warn(cur().line, "enum declaration skipped");
                next();
                if (cur().kind == TokKind::Ident) next();
                skip_to_block_or_semi();
            } else {
                warn(cur().line, "unexpected token at top level skipped");
                next();
                skip_to_block_or_semi();
            }
        }
        return file;
    }

private:
    const Token& cur() const { return toks_[i_]; }
    const Token& peek(std::size_t k = 1) const {
        return toks_[std::min(i_ + k, toks_.size() - 1)];
    }
    void next() {
        if (i_ + 1 < toks_.size()) ++i_;
    }
    bool at_end() const { return cur().kind == TokKind::End; }
    bool is_ident(const char* text) const {
        return cur().kind == TokKind::Ident && cur().text == text;
    }
    bool peek_is_ident(std::size_t k, const char* text) const {
        return peek(k).kind == TokKind::Ident && peek(k).text == text;
    }
    bool is_punct(char c) const { return cur().kind == TokKind::Punct && cur().ch == c; }
    bool tok_is_punct(std::size_t at, char c) const {
        return toks_[at].kind == TokKind::Punct && toks_[at].ch == c;
    }

    void warn(long line, std::string message) {
        diags_.push_back({path_, line, Severity::Warning, std::move(message)});
    }

    void expect_semi() {
        if (is_punct(';')) next();
    }

    // Dotted identifier chain; a '.' is consumed only when an identifier
    // follows it (leaves `.*` and `...` untouched).
    std::string read_dotted() {
        std::string out;
        while (cur().kind == TokKind::Ident) {
            out += cur().text;
            if (peek().kind == TokKind::Punct && peek().ch == '.' &&
                peek(2).kind == TokKind::Ident) {
                next();
                next();
                out += '.';
            } else {
                next();
                break;
            }
        }
        return out;
    }

    void skip_annotation() {
        next(); // '@'
        read_dotted();
        if (is_punct('(')) skip_balanced('(', ')');
    }

    void skip_balanced(char open, char close) {
        int depth = 0;
        while (!at_end()) {
            if (is_punct(open)) ++depth;
            else if (is_punct(close)) {
                --depth;
                if (depth == 0) {
                    next();
                    return;
                }
            }
            next();
        }
    }

    void skip_to_block_or_semi() {
        while (!at_end()) {
            if (is_punct(';')) {
                next();
                return;
            }
            if (is_punct('{')) {
                skip_balanced('{', '}');
                return;
            }
            next();
        }
    }

    // Dotted type name with generics skipped; array suffixes appended.
    std::optional<std::string> parse_type_name() {
        if (cur().kind != TokKind::Ident) return std::nullopt;
        std::string name = read_dotted();
        if (name.empty()) return std::nullopt;
        if (is_punct('<')) skip_generics();
        while (is_punct('[') && peek().kind == TokKind::Punct && peek().ch == ']') {
            name += "[]";
            next();
            next();
        }
        return name;
    }

    void skip_generics() {
        int depth = 0;
        while (!at_end()) {
            if (is_punct('<')) ++depth;
            else if (is_punct('>')) {
                --depth;
                if (depth == 0) {
                    next();
                    return;
                }
            }
            next();
        }
    }

    void parse_type(RawFile& file, bool is_interface, long decl_line) {
        if (cur().kind != TokKind::Ident) {
            warn(decl_line, "missing type name");
            skip_to_block_or_semi();
            return;
        }
        RawType type;
        type.is_interface = is_interface;
        type.name = cur().text;
        next();
        if (is_punct('<')) {
            warn(cur().line, "generic type parameters ignored");
            skip_generics();
        }
        if (is_ident("extends")) {
            next();
            do {
                auto name = parse_type_name();
                if (!name) break;
                type.extends_names.push_back(*name);
            } while (is_punct(',') && (next(), true));
        }
        if (is_ident("implements")) {
            next();
            do {
                auto name = parse_type_name();
                if (!name) break;
                type.implements_names.push_back(*name);
            } while (is_punct(',') && (next(), true));
        }
        if (!is_punct('{')) {
            warn(cur().line, "type declaration without body skipped");
            skip_to_block_or_semi();
            return;
        }
        next(); // '{'
        if (is_interface) {
            parse_interface_body(type);
        } else {
            parse_class_body(type);
        }
        file.types.push_back(std::move(type));
    }

    void parse_interface_body(RawType& type) {
        while (!at_end() && !is_punct('}')) {
            if (is_punct('@')) {
                skip_annotation();
                continue;
            }
            if (is_punct(';')) {
                next();
                continue;
            }
            while (cur().kind == TokKind::Ident && kModifiers.count(cur().text)) next();
            if (is_ident("interface") || is_ident("class") || is_ident("enum")) {
                warn(cur().line, "nested type declaration skipped");
                next();
                if (cur().kind == TokKind::Ident) next();
                skip_to_block_or_semi();
                continue;
            }
            if (is_punct('<')) skip_generics(); // method type parameters
            long member_line = cur().line;
            auto return_type = parse_type_name();
            if (!return_type || cur().kind != TokKind::Ident) {
                warn(member_line, "unparseable interface member skipped");
                skip_to_block_or_semi();
                continue;
            }
            std::string name = cur().text;
            next();
            if (is_punct('(')) {
                RawMethod method;
                method.return_type = *return_type;
                method.name = name;
                method.line = member_line;
                method.is_public = true;
                method.is_abstract = true;
                parse_params(method, nullptr);
                skip_throws();
                if (is_punct('{')) {
                    warn(cur().line, "interface method body ignored");
                    skip_balanced('{', '}');
                } else {
                    expect_semi();
                }
                type.methods.push_back(std::move(method));
            } else {
                // constant declaration: ignored
                skip_constant();
            }
        }
        if (is_punct('}')) next();
    }

    void skip_constant() {
        int brace = 0;
        while (!at_end()) {
            if (is_punct('{')) ++brace;
            else if (is_punct('}')) --brace;
            else if (is_punct(';') && brace <= 0) {
                next();
                return;
            }
            next();
        }
    }

    void skip_throws() {
        if (!is_ident("throws")) return;
        next();
        while (cur().kind == TokKind::Ident) {
            read_dotted();
            if (is_punct(',')) next();
            else break;
        }
    }

    void parse_params(RawMethod& method, std::map<std::string, std::string>* names) {
        if (!is_punct('(')) return;
        next();
        while (!at_end() && !is_punct(')')) {
            if (is_punct('@')) {
                skip_annotation();
                continue;
            }
            if (is_ident("final")) {
                next();
                continue;
            }
            auto ptype = parse_type_name();
            if (!ptype) {
                next();
                continue;
            }
            // varargs normalize to an array suffix
            if (is_punct('.') && peek().kind == TokKind::Punct && peek().ch == '.' &&
                peek(2).kind == TokKind::Punct && peek(2).ch == '.') {
                next();
                next();
                next();
                *ptype += "[]";
            }
            std::string pname;
            if (cur().kind == TokKind::Ident) {
                pname = cur().text;
                next();
                while (is_punct('[') && peek().kind == TokKind::Punct && peek().ch == ']') {
                    *ptype += "[]";
                    next();
                    next();
                }
            }
            method.params.push_back(*ptype);
            if (names && !pname.empty()) names->emplace(pname, *ptype);
            if (is_punct(',')) next();
        }
        if (is_punct(')')) next();
    }

    void parse_class_body(RawType& type) {
        struct PendingBody {
            std::size_t begin = 0, end = 0; // token range inside braces
            std::map<std::string, std::string> params;
        };
        std::vector<PendingBody> bodies;

        while (!at_end() && !is_punct('}')) {
            if (is_punct('@')) {
                skip_annotation();
                continue;
            }
            if (is_punct(';')) {
                next();
                continue;
            }
            long member_line = cur().line;
            std::set<std::string> mods;
            while (cur().kind == TokKind::Ident && kModifiers.count(cur().text)) {
                mods.insert(cur().text);
                member_line = std::min(member_line, cur().line);
                next();
            }
            if (is_ident("interface") || is_ident("class") || is_ident("enum")) {
                warn(cur().line, "nested type declaration skipped");
                next();
                if (cur().kind == TokKind::Ident) next();
                skip_to_block_or_semi();
                continue;
            }
            if (is_punct('{')) { // instance or static initializer
                auto range = capture_block();
                bodies.push_back({range.first, range.second, {}});
                continue;
            }
            if (is_punct('<')) skip_generics();
            // constructor: Name (
            if (cur().kind == TokKind::Ident && cur().text == type.name &&
                peek().kind == TokKind::Punct && peek().ch == '(') {
                RawMethod ctor;
                PendingBody body;
                next();
                parse_params(ctor, &body.params);
                skip_throws();
                if (is_punct('{')) {
                    auto range = capture_block();
                    body.begin = range.first;
                    body.end = range.second;
                    bodies.push_back(std::move(body));
                } else {
                    expect_semi();
                }
                continue;
            }
            auto member_type = parse_type_name();
            if (!member_type || cur().kind != TokKind::Ident) {
                warn(member_line, "unparseable class member skipped");
                skip_to_block_or_semi();
                continue;
            }
            std::string name = cur().text;
            next();
            if (is_punct('(')) {
                RawMethod method;
                method.return_type = *member_type;
                method.name = name;
                method.line = member_line;
                method.is_public = mods.count("public") > 0;
                method.is_abstract = mods.count("abstract") > 0 || mods.count("native") > 0;
                PendingBody body;
                parse_params(method, &body.params);
                skip_throws();
                if (is_punct('{')) {
                    auto range = capture_block();
                    long close_line = toks_[range.second].line;
                    method.loc = close_line - member_line + 1;
                    body.begin = range.first;
                    body.end = range.second;
                    bodies.push_back(std::move(body));
                } else {
                    method.is_abstract = true;
                    method.loc = 0;
                    expect_semi();
                }
                type.methods.push_back(std::move(method));
            } else {
                // field declarator list; initializers are scanned for calls
                std::string ftype = *member_type;
                while (true) {
                    while (is_punct('[') && peek().kind == TokKind::Punct && peek().ch == ']') {
                        ftype += "[]";
                        next();
                        next();
                    }
                    type.fields.emplace(name, ftype);
                    std::size_t init_begin = i_;
                    int brace = 0, paren = 0;
                    while (!at_end()) {
                        if (is_punct('{')) ++brace;
                        else if (is_punct('}')) --brace;
                        else if (is_punct('(')) ++paren;
                        else if (is_punct(')')) --paren;
                        else if ((is_punct(',') || is_punct(';')) && brace == 0 && paren == 0) break;
                        next();
                    }
                    if (i_ > init_begin) bodies.push_back({init_begin, i_, {}});
                    if (is_punct(',')) {
                        next();
                        if (cur().kind == TokKind::Ident) {
                            name = cur().text;
                            ftype = *member_type;
                            next();
                            continue;
                        }
                    }
                    expect_semi();
                    break;
                }
            }
        }
        if (is_punct('}')) next();

        for (const auto& body : bodies) {
            scan_body(type, body.begin, body.end, body.params);
        }
    }

    // Consume a balanced brace block starting at '{'; returns the token
    // range strictly inside the braces (begin inclusive, end = index of the
    // closing brace).
    std::pair<std::size_t, std::size_t> capture_block() {
        std::size_t begin = i_ + 1;
        int depth = 0;
        while (!at_end()) {
            if (is_punct('{')) ++depth;
            else if (is_punct('}')) {
                --depth;
                if (depth == 0) {
                    std::size_t end = i_;
                    next();
                    return {begin, end};
                }
            }
            next();
        }
        return {begin, i_};
    }

    // Linear scan of a body region: records local declarations and extracts
    // call expressions. Receivers stay raw; linking resolves them.
    void scan_body(RawType& type, std::size_t begin, std::size_t end,
                   const std::map<std::string, std::string>& params) {
        std::map<std::string, std::string> locals = params;
        for (std::size_t i = begin; i < end; ++i) {
            const Token& tok = toks_[i];
            if (tok.kind != TokKind::Ident) continue;
            if (tok_is_punct(i + 1, '(')) {
                handle_call(type, locals, i, end);
                continue;
            }
            if (kModifiers.count(tok.text) || kNotCalls.count(tok.text)) continue;
            try_local_declaration(locals, i, end);
        }
    }

    // Type Name (= | ; | , | : | )) introduces a local variable.
    void try_local_declaration(std::map<std::string, std::string>& locals,
                               std::size_t at, std::size_t end) {
        std::size_t j = at;
        std::string tname;
        // dotted name
        while (j < end && toks_[j].kind == TokKind::Ident) {
            tname += toks_[j].text;
            if (tok_is_punct(j + 1, '.') && toks_[j + 2].kind == TokKind::Ident) {
                tname += '.';
                j += 2;
            } else {
                ++j;
                break;
            }
        }
        if (tname.empty() || j >= end) return;
        // generics (only when '<' hugs an identifier chain)
        if (tok_is_punct(j, '<')) {
            int depth = 0;
            std::size_t k = j;
            while (k < end) {
                if (tok_is_punct(k, '<')) ++depth;
                else if (tok_is_punct(k, '>')) {
                    --depth;
                    if (depth == 0) {
                        ++k;
                        break;
                    }
                } else if (tok_is_punct(k, ';') || tok_is_punct(k, '{')) {
                    return; // comparison, not generics
                }
                ++k;
            }
            if (depth != 0) return;
            j = k;
        }
        while (j + 1 < end && tok_is_punct(j, '[') && tok_is_punct(j + 1, ']')) {
            tname += "[]";
            j += 2;
        }
        if (j >= end || toks_[j].kind != TokKind::Ident) return;
        std::string vname = toks_[j].text;
        ++j;
        if (j > end) return;
        if (tok_is_punct(j, '=') || tok_is_punct(j, ';') || tok_is_punct(j, ',') ||
            tok_is_punct(j, ':') || tok_is_punct(j, ')')) {
            locals.emplace(vname, tname);
        }
    }

    void handle_call(RawType& type, const std::map<std::string, std::string>& locals,
                     std::size_t at, std::size_t end) {
        const std::string& called = toks_[at].text;
        // collect the dotted chain ending here
        std::vector<std::string> chain{called};
        std::size_t head = at;
        while (head >= 2 && tok_is_punct(head - 1, '.') &&
               toks_[head - 2].kind == TokKind::Ident) {
            chain.insert(chain.begin(), toks_[head - 2].text);
            head -= 2;
        }
        if (head >= 1 && tok_is_punct(head - 1, '.')) {
            // receiver is a call result or other expression: skipped link
            ++type.chained_links;
            return;
        }
        if (chain.size() == 1) {
            if (kNotCalls.count(called) || kModifiers.count(called)) return;
            if (head >= 1 && toks_[head - 1].kind == TokKind::Ident &&
                toks_[head - 1].text == "new") {
                return; // constructor invocation
            }
            type.calls.push_back({"", false, called, count_args(at + 1, end)});
            return;
        }
        const std::string& first = chain.front();
        int argc = count_args(at + 1, end);
        if (first == "this") {
            if (chain.size() == 2) {
                type.calls.push_back({"", false, called, argc});
            } else if (chain.size() == 3) {
                auto field = type.fields.find(chain[1]);
                if (field != type.fields.end()) {
                    type.calls.push_back({field->second, false, called, argc});
                } else {
                    ++type.unresolved_receivers;
                }
            } else {
                ++type.unresolved_receivers;
            }
            return;
        }
        if (first == "super") {
            if (chain.size() == 2) {
                type.calls.push_back({"", true, called, argc});
            } else {
                ++type.unresolved_receivers;
            }
            return;
        }
        if (chain.size() == 2) {
            auto local = locals.find(first);
            if (local != locals.end()) {
                type.calls.push_back({local->second, false, called, argc});
                return;
            }
            auto field = type.fields.find(first);
            if (field != type.fields.end()) {
                type.calls.push_back({field->second, false, called, argc});
                return;
            }
            // maybe a type name (static-style call); linking decides
            type.calls.push_back({first, false, called, argc});
            return;
        }
        // a.b.m(...): try the prefix as a qualified type name
        std::string prefix;
        for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
            if (k) prefix += '.';
            prefix += chain[k];
        }
        type.calls.push_back({prefix, false, called, argc});
    }

    // Argument count = top-level commas + 1 between the '(' at `open` and
    // its match; 0 for empty parentheses. Nested parens/brackets/braces and
    // identifier-hugging generics are skipped by balance counting.
    int count_args(std::size_t open, std::size_t end) {
        if (tok_is_punct(open + 1, ')')) return 0;
        int paren = 0, bracket = 0, brace = 0, angle = 0;
        int commas = 0;
        for (std::size_t i = open; i < end; ++i) {
            const Token& tok = toks_[i];
            if (tok.kind != TokKind::Punct) continue;
            char c = tok.ch;
            if (c == '(') ++paren;
            else if (c == ')') {
                if (--paren == 0) break;
            } else if (c == '[') ++bracket;
            else if (c == ']') --bracket;
            else if (c == '{') ++brace;
            else if (c == '}') --brace;
            else if (c == '<' && i > open && toks_[i - 1].kind == TokKind::Ident) ++angle;
            else if (c == '>' && angle > 0) --angle;
            else if (c == ',' && paren == 1 && bracket == 0 && brace == 0 && angle == 0) {
                ++commas;
            }
        }
        return commas + 1;
    }

    std::string path_;
    std::vector<Token> toks_;
    std::size_t i_ = 0;
    std::vector<ParseDiagnostic>& diags_;
};

struct DeclaredType {
    bool is_interface = false;
    std::size_t file = 0;
    std::size_t index = 0;
};

struct Linker {
    const std::vector<RawFile>& files;
    std::map<std::string, DeclaredType> declared;        // qualified -> decl
    std::map<std::string, std::vector<std::string>> by_simple; // simple -> qualified

    explicit Linker(const std::vector<RawFile>& files) : files(files) {
        for (std::size_t f = 0; f < files.size(); ++f) {
            for (std::size_t t = 0; t < files[f].types.size(); ++t) {
                const RawType& type = files[f].types[t];
                std::string q = files[f].package.empty()
                                    ? type.name
                                    : files[f].package + "." + type.name;
                if (!declared.count(q)) {
                    declared.emplace(q, DeclaredType{type.is_interface, f, t});
                    by_simple[type.name].push_back(q);
                }
            }
        }
    }

    std::optional<std::string> resolve_declared(const RawFile& file,
                                                const std::string& name) const {
        if (name.empty()) return std::nullopt;
        if (name.find('.') != std::string::npos) {
            if (declared.count(name)) return name;
            return std::nullopt;
        }
        auto imported = file.imports.find(name);
        if (imported != file.imports.end() && declared.count(imported->second)) {
            return imported->second;
        }
        if (!file.package.empty()) {
            std::string same = file.package + "." + name;
            if (declared.count(same)) return same;
        }
        for (const auto& pkg : file.wildcard_imports) {
            std::string wild = pkg + "." + name;
            if (declared.count(wild)) return wild;
        }
        if (declared.count(name)) return name;
        auto simple = by_simple.find(name);
        if (simple != by_simple.end() && simple->second.size() == 1) {
            return simple->second.front();
        }
        return std::nullopt;
    }

    TypeRef make_ref(const RawFile& file, const std::string& name) const {
        if (auto hit = resolve_declared(file, name)) return TypeRef::from_qualified(*hit);
        auto imported = file.imports.find(name);
        if (imported != file.imports.end()) {
            return TypeRef::from_qualified(imported->second);
        }
        return TypeRef::from_qualified(name);
    }
};

} // namespace

const ClassDecl* TypeBatch::find_class(const std::string& qualified) const {
    if (!classes) return nullptr;
    for (const auto& decl : *classes) {
        if (decl.ref.qualified() == qualified) return &decl;
    }
    return nullptr;
}

bool test_package(const std::string& package) {
    std::size_t start = 0;
    while (start <= package.size()) {
        std::size_t dot = package.find('.', start);
        std::string segment = package.substr(
            start, dot == std::string::npos ? std::string::npos : dot - start);
        if (segment == "test" || segment == "tests") return true;
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    return false;
}

bool classify_test(const ClassDecl& decl, const TypeBatch& batch) {
    if (test_package(decl.ref.package)) return true;
    std::set<std::string> visited;
    const ClassDecl* current = &decl;
    while (current) {
        if (!visited.insert(current->ref.qualified()).second) break;
        if (!current->extends) break;
        if (current->extends->simple_name == "TestCase") return true;
        current = batch.find_class(current->extends->qualified());
    }
    return false;
}

bool classify_test(const InterfaceDecl& decl, const TypeBatch&) {
    return test_package(decl.ref.package);
}

ParseResult parse_source(std::vector<SourceFile> files) {
    std::sort(files.begin(), files.end(),
              [](const SourceFile& a, const SourceFile& b) { return a.path < b.path; });

    ParseResult result;
    std::vector<RawFile> parsed;
    for (const auto& file : files) {
        result.system_loc += count_lines(file.text);
        if (!valid_utf8(file.text)) {
            result.diagnostics.push_back(
                {file.path, 1, Severity::Error, "Encoding: file is not valid UTF-8"});
            continue;
        }
        std::string masked = mask_trivia(file.text);
        long open = std::count(masked.begin(), masked.end(), '{');
        long close = std::count(masked.begin(), masked.end(), '}');
        if (open != close) {
            result.diagnostics.push_back(
                {file.path, 1, Severity::Error,
                 "MalformedFile: unbalanced braces at top level"});
            continue;
        }
        FileParser parser(file.path, masked, result.diagnostics);
        RawFile raw = parser.run();
        raw.line_count = count_lines(file.text);
        parsed.push_back(std::move(raw));
    }

    Linker linker(parsed);

    // duplicate qualified names within the batch: first declaration wins
    // here; the model build rejects the duplicate set outright.
    std::set<std::string> seen;
    for (const auto& file : parsed) {
        for (const auto& type : file.types) {
            std::string q = file.package.empty() ? type.name
                                                 : file.package + "." + type.name;
            if (!seen.insert(q).second) {
                result.diagnostics.push_back(
                    {file.path, 1, Severity::Warning,
                     "duplicate type name in batch: " + q});
            }
        }
    }

    for (const auto& file : parsed) {
        for (const auto& type : file.types) {
            TypeRef ref{file.package, type.name};
            if (type.is_interface) {
                InterfaceDecl decl;
                decl.ref = ref;
                for (const auto& name : type.extends_names) {
                    decl.extends.insert(linker.make_ref(file, name));
                }
                for (const auto& method : type.methods) {
                    MethodDecl m;
                    m.owner = ref;
                    m.signature = MethodSignature::make(method.return_type, method.name,
                                                        method.params);
                    m.is_public = true;
                    m.is_abstract = true;
                    m.loc = 0;
                    bool dup = false;
                    for (const auto& existing : decl.methods) {
                        if (existing.signature == m.signature) {
                            dup = true;
                            break;
                        }
                    }
                    if (dup) {
                        result.diagnostics.push_back(
                            {file.path, method.line, Severity::Warning,
                             "duplicate signature in interface dropped: " +
                                 m.signature.text()});
                        continue;
                    }
                    decl.methods.push_back(std::move(m));
                }
                result.interfaces.push_back(std::move(decl));
            } else {
                ClassDecl decl;
                decl.ref = ref;
                if (!type.extends_names.empty()) {
                    decl.extends = linker.make_ref(file, type.extends_names.front());
                }
                for (const auto& name : type.implements_names) {
                    decl.implements.insert(linker.make_ref(file, name));
                }
                for (const auto& method : type.methods) {
                    MethodDecl m;
                    m.owner = ref;
                    m.signature = MethodSignature::make(method.return_type, method.name,
                                                        method.params);
                    m.is_public = method.is_public;
                    m.is_abstract = method.is_abstract;
                    m.loc = method.is_abstract ? 0 : method.loc;
                    decl.methods.push_back(std::move(m));
                }
                result.classes.push_back(std::move(decl));
            }
        }
    }

    // call records, resolved against the batch
    for (const auto& file : parsed) {
        for (const auto& type : file.types) {
            if (type.is_interface) continue;
            TypeRef caller{file.package, type.name};
            long unresolved = type.unresolved_receivers;
            for (const auto& call : type.calls) {
                TypeRef receiver;
                if (call.via_super) {
                    if (type.extends_names.empty()) {
                        ++unresolved;
                        continue;
                    }
                    auto target = linker.resolve_declared(file, type.extends_names.front());
                    if (!target) {
                        ++unresolved;
                        continue;
                    }
                    receiver = TypeRef::from_qualified(*target);
                } else if (call.receiver.empty()) {
                    receiver = caller;
                } else {
                    auto target = linker.resolve_declared(file, call.receiver);
                    if (!target) {
                        ++unresolved;
                        continue;
                    }
                    receiver = TypeRef::from_qualified(*target);
                }
                result.calls.push_back({caller, receiver, call.method, call.argc});
            }
            if (unresolved > 0) {
                result.diagnostics.push_back(
                    {file.path, 1, Severity::Warning,
                     std::to_string(unresolved) +
                         " call site(s) with unresolvable receivers skipped in " +
                         caller.qualified()});
            }
            if (type.chained_links > 0) {
                result.diagnostics.push_back(
                    {file.path, 1, Severity::Warning,
                     std::to_string(type.chained_links) +
                         " chained call link(s) skipped in " + caller.qualified()});
            }
        }
    }

    TypeBatch batch{&result.interfaces, &result.classes};
    for (auto& decl : result.classes) decl.is_test = classify_test(decl, batch);
    for (auto& decl : result.interfaces) decl.is_test = classify_test(decl, batch);

    return result;
}

} // namespace ifacelint

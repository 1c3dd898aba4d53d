#pragma once

#include <stdexcept>
#include <string>

namespace ifacelint {

enum class ErrorKind {
    Usage,             // bad arguments to an API entry point
    Input,             // unreadable path, empty input where one is required
    MalformedFile,     // source file with unbalanced top-level braces
    Encoding,          // input is not valid UTF-8
    SchemaViolation,   // facts record missing/mistyped fields or dangling refs
    CyclicHierarchy,   // extends cycle among interfaces or classes
    DuplicateTypeName, // two declarations share a qualified name
    UnknownType,       // query for a type the model does not contain
    LengthMismatch,    // paired statistics vectors of different length
    Internal,          // broken internal consistency check
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace ifacelint

#pragma once

#include <stdexcept>
#include <string>

namespace abelcp {

enum class ErrorKind {
    MalformedInput,
    DivisionByZero,
    InconsistentPresentation,
    Domain,
    Precondition,
    InvalidWitness,
    InvalidIsomorphism,
    InternalInconsistency,
    ValidationFailure,
    Io,
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::MalformedInput: return "malformed input";
        case ErrorKind::DivisionByZero: return "division by zero";
        case ErrorKind::InconsistentPresentation: return "inconsistent presentation";
        case ErrorKind::Domain: return "domain error";
        case ErrorKind::Precondition: return "precondition violated";
        case ErrorKind::InvalidWitness: return "invalid witness";
        case ErrorKind::InvalidIsomorphism: return "invalid isomorphism";
        case ErrorKind::InternalInconsistency: return "internal inconsistency";
        case ErrorKind::ValidationFailure: return "validation failure";
        case ErrorKind::Io: return "i/o error";
    }
    return "error";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) fail(kind, what);
}

}  // namespace abelcp

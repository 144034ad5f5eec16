#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace codeforest {

enum class ErrorKind {
    NonUtf8Input,
    UnterminatedLiteral,
    UnterminatedComment,
    UnbalancedBraces,
    MissingClassName,
    RootNotFound,
    Io,
    DuplicateClassName,
    InheritanceCycle,
    DegenerateSegment,
    SceneTooLarge,
    UnknownKey,
    NonPositiveValue,
    ConfigSyntax,
};

std::string_view to_string(ErrorKind kind);

// Every failure surfaced by the library carries one of the kinds above so
// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace codeforest

#include <codeforest/error.hpp>

namespace codeforest {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::NonUtf8Input: return "NonUtf8Input";
    case ErrorKind::UnterminatedLiteral: return "UnterminatedLiteral";
    case ErrorKind::UnterminatedComment: return "UnterminatedComment";
    case ErrorKind::UnbalancedBraces: return "UnbalancedBraces";
    case ErrorKind::MissingClassName: return "MissingClassName";
    case ErrorKind::RootNotFound: return "RootNotFound";
    case ErrorKind::Io: return "Io";
    case ErrorKind::DuplicateClassName: return "DuplicateClassName";
    case ErrorKind::InheritanceCycle: return "InheritanceCycle";
    case ErrorKind::DegenerateSegment: return "DegenerateSegment";
    case ErrorKind::SceneTooLarge: return "SceneTooLarge";
    case ErrorKind::UnknownKey: return "UnknownKey";
    case ErrorKind::NonPositiveValue: return "NonPositiveValue";
    case ErrorKind::ConfigSyntax: return "ConfigSyntax";
    }
    return "Unknown";
}

} // namespace codeforest

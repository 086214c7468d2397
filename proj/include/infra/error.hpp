#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace infra
{

enum class ErrorKind
{
    DuplicateLabel,
    UnknownLabel,
    UniverseMismatch,
    UniverseTooLarge,
    UniverseTooLargeForScan,
    InvalidSpace,
    FlagMismatch,
    InvalidModel,
    UnknownWorld,
    UnknownVariable,
    ParseError,
    TooManyAtoms,
    BoundsTooLarge,
    UnknownProperty,
    InvalidFile,
};

[[nodiscard]] constexpr std::string_view to_string( ErrorKind kind )
{
    switch ( kind )
    {
    case ErrorKind::DuplicateLabel: return "DuplicateLabel";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::UniverseMismatch: return "UniverseMismatch";
    case ErrorKind::UniverseTooLarge: return "UniverseTooLarge";
    case ErrorKind::UniverseTooLargeForScan: return "UniverseTooLargeForScan";
    case ErrorKind::InvalidSpace: return "InvalidSpace";
    case ErrorKind::FlagMismatch: return "FlagMismatch";
    case ErrorKind::InvalidModel: return "InvalidModel";
    case ErrorKind::UnknownWorld: return "UnknownWorld";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::TooManyAtoms: return "TooManyAtoms";
    case ErrorKind::BoundsTooLarge: return "BoundsTooLarge";
    case ErrorKind::UnknownProperty: return "UnknownProperty";
    case ErrorKind::InvalidFile: return "InvalidFile";
    }
    return "Unknown";
}

// All library failures are reported through this one exception type; the
// kind drives CLI exit codes.
class Error : public std::runtime_error
{
    ErrorKind _kind;

public:
    Error( ErrorKind kind, const std::string& message )
        : std::runtime_error( std::string( to_string( kind ) ) + ": " + message ), _kind{ kind } {}

    [[nodiscard]] ErrorKind kind() const { return _kind; }
};

} // namespace infra

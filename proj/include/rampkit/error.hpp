#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rampkit {

// Every recoverable failure in the library is reported through Error with a
// kind tag; the CLI maps all of them to exit code 2.
enum class ErrorKind {
    MissingColumn,
    NonUniformStep,
    NonFiniteValue,
    ParseError,
    InvalidConfig,
    InvalidArgument,
    TooShort,
    EmptySelection,
    ZeroBaseline,
    AllModesRejected,
    EmptyInput,
    LengthMismatch,
    OutOfRange,
    HistoricalTooShort,
    InvalidS,
    AlignmentError,
    SingularSystem,
    Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace rampkit

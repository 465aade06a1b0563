#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace occ {

enum class ErrorKind {
    Io,
    EmptyFile,
    MalformedRow,
    NonNumeric,
    NonFiniteValue,
    DuplicateId,
    TargetClassNotFound,
    NonPsdCovariance,
    InsufficientSamples,
    DimensionMismatch,
    InvalidArgument,
    InfeasibleC,
    EmptyTrainingSet,
    Diverged,
    IdMismatch,
    EmptyEvaluation,
    EmptyValidationClass,
    AllConfigsFailed,
    ModelMismatch,
    Format,
};

std::string_view to_string(ErrorKind kind) noexcept;

//! Every failure raised by the toolkit. The kind is stable and tested;
//! the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace occ

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hdcat {

enum class ErrorKind {
    ParseError,
    InvalidArgument,
    // finite categories
    MissingIdentity,
    NonAssociative,
    IllTypedComposite,
    DanglingReference,
    NotDiscreteBase,
    // multi-simplicial carriers
    MissingCell,
    IdentityViolation,
    FunctorialityViolation,
    SegalFailure,
    // maps and constructions
    InvalidMap,
    UnknownPoint,
    SurjectivityFailure,
    NonCommutingSquare,
    NotHomotopicallyDiscrete,
    SizeExceeded,
};

std::string_view to_string(ErrorKind kind);

/// All library failures are reported through this exception. The message
/// names the offending entries; `location()` is a short machine-readable
/// path such as "axis=0 at=2,1".
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message, std::string location = {});

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& location() const noexcept { return location_; }

private:
    ErrorKind kind_;
    std::string location_;
};

}  // namespace hdcat

#pragma once

// Exception types shared by every arbpack module.
//
// Negative answers (an infeasible instance, a failed verification) are never
// thrown; they come back as Certificate or VerifyResult values. Exceptions are
// reserved for misuse, exhausted size caps, and internal tripwires that would
// indicate a bug.

#include <stdexcept>
#include <string>

namespace arbpack {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the domain of an operation (unknown id, empty set, ...).
struct DomainError : Error {
    using Error::Error;
};

// An exponential routine was asked to exceed its configured cap.
struct SizeLimitError : Error {
    using Error::Error;
};

// A documented precondition of an operation does not hold.
struct ContractError : Error {
    using Error::Error;
};

// Something the underlying theorems rule out actually happened.
struct TheoremViolation : Error {
    using Error::Error;
};

struct InvalidExtension : Error {
    using Error::Error;
};

struct IdentityViolation : Error {
    using Error::Error;
};

struct InfeasibleBound : Error {
    using Error::Error;
};

struct IntegralityViolation : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(std::string path, const std::string& reason)
        : Error(path.empty() ? reason : path + ": " + reason), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace arbpack

#pragma once

#include <stdexcept>
#include <string>

namespace nilchar {

/// Base of every error thrown by the library. `kind()` is a stable tag used
/// by the CLI and in JSON reports.
class Error : public std::runtime_error
{
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind))
    {
    }

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// Bad input: malformed files, failed preconditions, exceeded caps.
class UsageError : public Error
{
public:
    using Error::Error;
};

#define NILCHAR_USAGE_ERROR(Name)                                                  \
    class Name : public UsageError                                                 \
    {                                                                              \
    public:                                                                        \
        explicit Name(const std::string& what) : UsageError(#Name, what) {}        \
    }

NILCHAR_USAGE_ERROR(NotPrime);
NILCHAR_USAGE_ERROR(CapExceeded);
NILCHAR_USAGE_ERROR(DivisionByZero);
NILCHAR_USAGE_ERROR(NotAssociative);
NILCHAR_USAGE_ERROR(NotNilpotent);
NILCHAR_USAGE_ERROR(NotAnIdeal);
NILCHAR_USAGE_ERROR(NotASubgroup);
NILCHAR_USAGE_ERROR(NotNormal);
NILCHAR_USAGE_ERROR(ParseError);
NILCHAR_USAGE_ERROR(InvalidArgument);

#undef NILCHAR_USAGE_ERROR

/// A computed object violated a proven statement. These are never expected;
/// `stage` names the check and `witness` carries the offending data.
class VerificationFailed : public Error
{
public:
    VerificationFailed(std::string stage, std::string witness)
        : Error("VerificationFailed", stage + " (" + witness + ")"),
          stage_(std::move(stage)), witness_(std::move(witness))
    {
    }

    const std::string& stage() const noexcept { return stage_; }
    const std::string& witness() const noexcept { return witness_; }

private:
    std::string stage_;
    std::string witness_;
};

} // namespace nilchar

#pragma once

#include <stdexcept>
#include <string>

namespace fermat_lab {

enum class ErrorCode {
    NotPrime,
    NotInvertible,
    NoSolution,
    DivisibleByP,
    LimitTooLarge,
    SOutOfRange,
    UOutOfRange,
    BadResidue,
    PTooSmall,
    NoValidParams,
    EmptyInput,
    UnexcludedWieferich,
    ChecksumMismatch,
    Io,
    Parse,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace fermat_lab

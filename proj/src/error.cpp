#include "fermat_lab/error.hpp"

namespace fermat_lab {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::NotInvertible: return "NotInvertible";
        case ErrorCode::NoSolution: return "NoSolution";
        case ErrorCode::DivisibleByP: return "DivisibleByP";
        case ErrorCode::LimitTooLarge: return "LimitTooLarge";
        case ErrorCode::SOutOfRange: return "SOutOfRange";
        case ErrorCode::UOutOfRange: return "UOutOfRange";
        case ErrorCode::BadResidue: return "BadResidue";
        case ErrorCode::PTooSmall: return "PTooSmall";
        case ErrorCode::NoValidParams: return "NoValidParams";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::UnexcludedWieferich: return "UnexcludedWieferich";
        case ErrorCode::ChecksumMismatch: return "ChecksumMismatch";
        case ErrorCode::Io: return "Io";
        case ErrorCode::Parse: return "Parse";
    }
    return "Unknown";
}

}  // namespace fermat_lab

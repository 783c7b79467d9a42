#pragma once

// Exhaustive invariant checks across all modules, up to a prime bound.

#include <string>
#include <vector>

#include "fermat_lab/modmath.hpp"

namespace fermat_lab {

struct FamilyResult {
    std::string name;
    u64 checks = 0;
    u64 violations = 0;
    std::string first_failure;

    bool passed() const noexcept { return violations == 0; }
};

/// Runs every family on primes p <= max_p (families with a quadratic cost
/// cap their own bound at 300).
std::vector<FamilyResult> verify_all(u64 max_p);

}  // namespace fermat_lab

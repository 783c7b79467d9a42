#pragma once

// Fermat quotients q_p(u) = ((u^{p-1} mod p^2) - 1) / p, singly and in bulk.

#include <cstdint>
#include <span>
#include <vector>

#include "fermat_lab/modmath.hpp"

namespace fermat_lab {

/// Per-prime state for repeated quotient evaluation (Montgomery form mod p^2).
class QuotientContext {
public:
    explicit QuotientContext(Prime p);

    Prime prime() const noexcept { return p_; }

    /// q_p(u) for u in [1, p^2) with p not dividing u. Unchecked.
    u64 of_reduced(u64 u) const noexcept {
        const u64 x = mont_.from_mont(mont_.pow(mont_.to_mont(u), p_ - 1));
        return (x - 1) / p_;
    }

    /// q_p(u) for any integer u coprime to p.
    u64 operator()(i64 u) const;

private:
    Prime p_;
    u64 p2_;
    Montgomery mont_;
};

u64 fermat_quotient(i64 u, Prime p);

/// q_p(num/den) = q_p(num) - q_p(den) mod p.
u64 quotient_of_rational(i64 num, i64 den, Prime p);

/// q_p(u) - v/u mod p, which equals q_p(u + v*p).
u64 shift_identity(i64 u, i64 v, Prime p);

/// Smallest-prime-factor sieve over [1, limit]; independent of p, so one
/// instance can back the quotient tables of many primes.
class FactorSieve {
public:
    explicit FactorSieve(u64 limit);

    u64 limit() const noexcept { return spf_.empty() ? 0 : spf_.size() - 1; }
    std::span<const std::uint32_t> primes() const noexcept { return primes_; }
    u64 smallest_factor(u64 w) const noexcept { return spf_[w]; }
    u64 cofactor(u64 w) const noexcept { return cofactor_[w]; }

private:
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> cofactor_;  // w / spf(w)
    std::vector<std::uint32_t> primes_;
};

/// Immutable table of q_p(w) for 1 <= w <= limit.
class QuotientTable {
public:
    QuotientTable() = default;

    Prime prime() const noexcept { return p_; }
    u64 limit() const noexcept { return values_.empty() ? 0 : values_.size() - 1; }

    u64 operator[](u64 w) const noexcept { return values_[w]; }
    u64 at(u64 w) const;

    /// Entries for w = 1..limit.
    std::span<const std::uint32_t> values() const noexcept {
        return std::span<const std::uint32_t>(values_).subspan(1);
    }

private:
    friend QuotientTable build_table(Prime p, u64 limit, const FactorSieve& sieve);

    QuotientTable(Prime p, std::vector<std::uint32_t> values) : p_(p), values_(std::move(values)) {}

    Prime p_{3};
    std::vector<std::uint32_t> values_;  // index 0 unused
};

/// Builds q_p(w), 1 <= w <= limit, from a smallest-prime-factor sieve: one
/// exponentiation per prime w, one addition per composite.
QuotientTable build_table(Prime p, u64 limit);
QuotientTable build_table(Prime p, u64 limit, const FactorSieve& sieve);

}  // namespace fermat_lab

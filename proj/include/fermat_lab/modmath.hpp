#pragma once

// Exact modular arithmetic for moduli up to p^2 with p < 2^31.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fermat_lab/error.hpp"

namespace fermat_lab {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline constexpr u64 kMaxPrimeExclusive = u64{1} << 31;

bool is_prime(u64 n);

/// An odd prime 3 <= p < 2^31, so that p^2 < 2^62.
class Prime {
public:
    explicit Prime(u64 value);

    u64 value() const noexcept { return value_; }
    u64 squared() const noexcept { return value_ * value_; }
    operator u64() const noexcept { return value_; }

private:
    u64 value_;
};

inline u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m);

/// Inverse of a modulo m; throws NotInvertible when gcd(a, m) != 1.
u64 inv_mod(u64 a, u64 m);

/// Canonical representative of a in [0, m).
inline u64 reduce_signed(i64 a, u64 m) {
    i64 r = a % static_cast<i64>(m);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

/// Jacobi symbol (a/n) for odd n by the binary algorithm.
int jacobi(u64 a, u64 n);

/// Legendre symbol (a/p) in {-1, 0, +1}.
inline int legendre(i64 a, Prime p) { return jacobi(reduce_signed(a, p), p); }

/// Euler's criterion; kept as an oracle for the binary Jacobi routine.
int legendre_euler(i64 a, Prime p);

struct UnitSolution {
    u64 u;
    u64 v;
};

/// Solves r*v - ell*u = 1 with 0 < u < r and 0 < v < ell.
UnitSolution solve_unit_equation(u64 r, u64 ell);

/// Both roots of x^2 + x + 1 = 0 mod p, ascending, or nothing when p = 2 mod 3.
std::optional<std::pair<u64, u64>> roots_of_unity3(Prime p);

/// All primes in [a, b], ascending (segmented sieve).
std::vector<u64> primes_in_range(u64 a, u64 b);

/// Reduction of x < 2^64 modulo a fixed m < 2^32 by a precomputed reciprocal.
class Barrett {
public:
    explicit Barrett(u64 modulus) : m_(modulus), recip_(~u64{0} / modulus) {}

    u64 modulus() const noexcept { return m_; }
    u64 reduce(u64 x) const noexcept {
        const u64 q = static_cast<u64>((static_cast<u128>(x) * recip_) >> 64);
        u64 r = x - q * m_;
        while (r >= m_) r -= m_;
        return r;
    }
    u64 mul(u64 a, u64 b) const noexcept { return reduce(a * b); }

private:
    u64 m_;
    u64 recip_;
};

/// Montgomery arithmetic for an odd modulus m < 2^62. Residues are kept
/// in Montgomery form in [0, m).
class Montgomery {
public:
    explicit Montgomery(u64 modulus);

    u64 modulus() const noexcept { return m_; }

    u64 reduce(u128 t) const noexcept {
        const u64 q = static_cast<u64>(t) * neg_inv_;
        const u64 r = static_cast<u64>((t + static_cast<u128>(q) * m_) >> 64);
        return r >= m_ ? r - m_ : r;
    }
    u64 mul(u64 a, u64 b) const noexcept { return reduce(static_cast<u128>(a) * b); }
    u64 to_mont(u64 x) const noexcept { return mul(x % m_, r2_); }
    u64 from_mont(u64 x) const noexcept { return reduce(x); }
    u64 one() const noexcept { return one_; }

    /// x^e for x in Montgomery form; result in Montgomery form.
    u64 pow(u64 x, u64 e) const noexcept {
        u64 result = one_;
        while (e != 0) {
            if (e & 1) result = mul(result, x);
            x = mul(x, x);
            e >>= 1;
        }
        return result;
    }

private:
    u64 m_;
    u64 neg_inv_;  // -m^{-1} mod 2^64
    u64 r2_;       // 2^128 mod m
    u64 one_;      // 2^64 mod m
};

}  // namespace fermat_lab

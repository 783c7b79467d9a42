#include "fermat_lab/modmath.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

namespace fermat_lab {

namespace {

bool miller_rabin_witness(u64 n, u64 a, u64 d, int r) {
    u64 x = pow_mod(a % n, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < r; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

}  // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    static constexpr u64 kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 q : kSmall) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // This witness set is deterministic for all n < 3.3 * 10^24.
    for (u64 a : kSmall) {
        if (miller_rabin_witness(n, a, d, r)) return false;
    }
    return true;
}

Prime::Prime(u64 value) : value_(value) {
    if (value < 3 || value >= kMaxPrimeExclusive || !is_prime(value)) {
        throw Error(ErrorCode::NotPrime, std::to_string(value) + " is not an odd prime below 2^31");
    }
}

u64 pow_mod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 result = 1;
    base %= m;
    while (exp != 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

u64 inv_mod(u64 a, u64 m) {
    i64 old_r = static_cast<i64>(a % m), r = static_cast<i64>(m);
    i64 old_s = 1, s = 0;
    while (r != 0) {
        const i64 q = old_r / r;
        old_r -= q * r;
        std::swap(old_r, r);
        old_s -= q * s;
        std::swap(old_s, s);
    }
    if (old_r != 1 && !(m == 1 && old_r == 0)) {
        throw Error(ErrorCode::NotInvertible,
                    std::to_string(a) + " has no inverse modulo " + std::to_string(m));
    }
    return reduce_signed(old_s, m);
}

int jacobi(u64 a, u64 n) {
    a %= n;
    if (a == 0) return n == 1 ? 1 : 0;
    int t = 1;
    auto strip_twos = [&] {
        const int z = std::countr_zero(a);
        a >>= z;
        if ((z & 1) && ((n & 7) == 3 || (n & 7) == 5)) t = -t;
    };
    strip_twos();
    while (a != n) {
        if (a < n) {
            std::swap(a, n);
            if (a & n & 2) t = -t;
        }
        a -= n;
        strip_twos();
    }
    return n == 1 ? t : 0;
}

int legendre_euler(i64 a, Prime p) {
    const u64 e = pow_mod(reduce_signed(a, p), (p - 1) / 2, p);
    if (e == 0) return 0;
    return e == 1 ? 1 : -1;
}

UnitSolution solve_unit_equation(u64 r, u64 ell) {
    if (r <= 1 || ell < 2 || std::gcd(r, ell) != 1) {
        throw Error(ErrorCode::NoSolution,
                    "r*v - ell*u = 1 has no admissible solution for r=" + std::to_string(r) +
                        ", ell=" + std::to_string(ell));
    }
    const u64 v = inv_mod(r % ell, ell);
    const u64 u = (static_cast<u128>(r) * v - 1) / ell;
    return {u, v};
}

std::optional<std::pair<u64, u64>> roots_of_unity3(Prime p) {
    if (p < 5) throw Error(ErrorCode::PTooSmall, "cube roots of unity need p >= 5");
    if (p % 3 != 1) return std::nullopt;
    for (u64 z = 2;; ++z) {
        const u64 w = pow_mod(z, (p - 1) / 3, p);
        if (w != 1) {
            const u64 w2 = mul_mod(w, w, p);
            return std::pair{std::min(w, w2), std::max(w, w2)};
        }
    }
}

std::vector<u64> primes_in_range(u64 a, u64 b) {
    std::vector<u64> out;
    if (b < 2 || a > b) return out;
    a = std::max<u64>(a, 2);

    const u64 root = static_cast<u64>(std::sqrt(static_cast<double>(b))) + 1;
    std::vector<bool> small(root + 1, true);
    std::vector<u64> base;
    for (u64 i = 2; i <= root; ++i) {
        if (!small[i]) continue;
        base.push_back(i);
        for (u64 j = i * i; j <= root; j += i) small[j] = false;
    }

    constexpr u64 kSegment = u64{1} << 18;
    std::vector<char> mark(kSegment);
    for (u64 lo = a; lo <= b; lo += kSegment) {
        const u64 hi = std::min(b, lo + kSegment - 1);
        std::fill(mark.begin(), mark.begin() + static_cast<std::ptrdiff_t>(hi - lo + 1), 1);
        for (u64 q : base) {
            if (q * q > hi) break;
            u64 start = std::max(q * q, (lo + q - 1) / q * q);
            for (u64 j = start; j <= hi; j += q) mark[j - lo] = 0;
        }
        for (u64 x = lo; x <= hi; ++x) {
            if (mark[x - lo]) out.push_back(x);
        }
        if (hi == b) break;
    }
    return out;
}

Montgomery::Montgomery(u64 modulus) : m_(modulus) {
    // Newton iteration for m^{-1} mod 2^64; each step doubles the correct bits.
    u64 inv = modulus;
    for (int i = 0; i < 5; ++i) inv *= 2 - modulus * inv;
    neg_inv_ = ~inv + 1;
    one_ = static_cast<u64>((static_cast<u128>(1) << 64) % modulus);
    r2_ = static_cast<u64>((static_cast<u128>(one_) * one_) % modulus);
}

}  // namespace fermat_lab

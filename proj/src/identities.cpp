#include "fermat_lab/identities.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fermat_lab/quotient.hpp"

namespace fermat_lab {

namespace {

constexpr u64 kChainLimit = 10000;
constexpr u64 kFiberLimit = 100000;

// inv[j] = j^{-1} mod p for 1 <= j < p, via inv[j] = -(p / j) * inv[p mod j].
std::vector<u64> inverse_table(u64 p) {
    std::vector<u64> inv(p, 0);
    inv[1] = 1;
    for (u64 j = 2; j < p; ++j) inv[j] = (p - (p / j) * inv[p % j] % p) % p;
    return inv;
}

u64 harmonic_power_sum(u64 p, u64 u, const std::vector<u64>& inv) {
    u64 power = 1, sum = 0;
    for (u64 j = 1; j < p; ++j) {
        power = power * u % p;
        sum = (sum + power * inv[j]) % p;
    }
    return sum;
}

// (a^p - b^p + 1) / p mod p, computed in mod-p^2 arithmetic; the numerator
// is 0 mod p by Fermat's little theorem.
u64 exact_numerator_quotient(u64 p, u64 a, u64 b) {
    const u64 m = p * p;
    const u64 num = (pow_mod(a, p, m) + m - pow_mod(b, p, m) + 1) % m;
    if (num % p != 0) {
        throw std::logic_error("numerator not divisible by p = " + std::to_string(p) + "; arithmetic bug");
    }
    return num / p;
}

}  // namespace

u64 f_eval(Prime p, u64 u) {
    if (u < 1 || u > p - 1) {
        throw Error(ErrorCode::UOutOfRange, "u = " + std::to_string(u) + " outside [1, p-1]");
    }
    return harmonic_power_sum(p, u, inverse_table(p));
}

bool hb_chain_check(Prime p) {
    if (p > kChainLimit) throw Error(ErrorCode::LimitTooLarge, "chain check is O(p^2); p must be <= 10^4");
    const QuotientContext ctx(p);
    const auto inv = inverse_table(p);
    for (u64 s = 1; s <= p - 2; ++s) {
        const u64 lhs = s * ctx.of_reduced(s) % p;
        const u64 rhs = (s + 1) * ctx.of_reduced(s + 1) % p;
        const u64 expansion = (lhs + p - rhs) % p;
        const u64 numerator = exact_numerator_quotient(p, s, s + 1) % p;
        const u64 f = harmonic_power_sum(p, s + 1, inv);
        if (expansion != numerator || numerator != f) return false;
    }
    return true;
}

std::vector<u64> f_value_table(Prime p) {
    std::vector<u64> f(p, 0);
    for (u64 u = 2; u <= p - 1; ++u) f[u] = exact_numerator_quotient(p, u - 1, u) % p;
    return f;
}

u64 f_fiber_count(Prime p, u64 r) {
    if (p > kFiberLimit) throw Error(ErrorCode::LimitTooLarge, "fiber counts need p <= 10^5");
    const auto f = f_value_table(p);
    r %= p;
    u64 n = 0;
    for (u64 u = 2; u <= p - 1; ++u) n += f[u] == r;
    return n;
}

FiberStats f_fiber_stats(Prime p) {
    if (p > kFiberLimit) throw Error(ErrorCode::LimitTooLarge, "fiber counts need p <= 10^5");
    const auto f = f_value_table(p);
    std::vector<u64> hist(p, 0);
    for (u64 u = 2; u <= p - 1; ++u) ++hist[f[u]];
    FiberStats st;
    for (u64 r = 0; r < p; ++r) {
        if (hist[r] > st.max_fiber) {
            st.max_fiber = hist[r];
            st.argmax_residue = r;
        }
    }
    st.ratio = static_cast<double>(st.max_fiber) / std::cbrt(static_cast<double>(p) * static_cast<double>(p));
    return st;
}

}  // namespace fermat_lab

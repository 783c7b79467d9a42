#pragma once

// The classifier theta_{p,s} = ( 2s(s+1) q_p(s^s / (s+1)^{s+1}) / p ) and the
// reduction type of the curve Y^p = X^s (1 - X) it determines.

#include <cstdint>
#include <string_view>

#include "fermat_lab/modmath.hpp"
#include "fermat_lab/quotient.hpp"

namespace fermat_lab {

class ThetaValue {
public:
    constexpr ThetaValue() = default;
    constexpr explicit ThetaValue(int v) : value_(static_cast<std::int8_t>(v)) {
        if (v < -1 || v > 1) throw Error(ErrorCode::Parse, "theta must be -1, 0 or +1");
    }

    constexpr int value() const noexcept { return value_; }
    friend constexpr bool operator==(ThetaValue, ThetaValue) = default;

private:
    std::int8_t value_ = 0;
};

enum class ReductionType { Tame, WildSplit, WildNonSplit };

ReductionType to_reduction_type(ThetaValue t) noexcept;
std::string_view to_string(ReductionType type) noexcept;

/// Throws SOutOfRange unless 1 <= s <= p - 2.
void check_s_range(Prime p, u64 s);

/// Unchecked core: legendre(2 s (s+1) (s q_s - (s+1) q_s1)) for s in [1, p-2].
inline int theta_kernel(u64 p, u64 s, u64 qs, u64 qs1) noexcept {
    const u64 s1 = s + 1;
    const u64 lhs = s * qs % p;
    const u64 rhs = s1 * qs1 % p;
    const u64 expansion = lhs >= rhs ? lhs - rhs : lhs + p - rhs;
    const u64 scale = 2 * s * s1 % p;
    return jacobi(scale * expansion % p, p);
}

/// theta_{p,s} from caller-supplied quotients q_s = q_p(s), q_s1 = q_p(s+1).
ThetaValue theta(Prime p, u64 s, u64 qs, u64 qs1);

/// Evaluates both quotients by exponentiation mod p^2.
ThetaValue theta_direct(Prime p, u64 s);
ThetaValue theta_direct(const QuotientContext& ctx, u64 s);

/// Independent evaluation from the definition: q_p of s^s * (s+1)^{-(s+1)} mod p^2.
ThetaValue theta_oracle(Prime p, u64 s);

/// theta for any integer t with gcd(t(t+1), p) = 1, via the period-p reduction.
ThetaValue theta_extended(Prime p, i64 t);

ReductionType reduction_type(Prime p, u64 s);

}  // namespace fermat_lab

#include "fermat_lab/theta.hpp"

#include <string>

namespace fermat_lab {

ReductionType to_reduction_type(ThetaValue t) noexcept {
    switch (t.value()) {
        case 0: return ReductionType::Tame;
        case 1: return ReductionType::WildSplit;
        default: return ReductionType::WildNonSplit;
    }
}

std::string_view to_string(ReductionType type) noexcept {
    switch (type) {
        case ReductionType::Tame: return "Tame";
        case ReductionType::WildSplit: return "WildSplit";
        case ReductionType::WildNonSplit: return "WildNonSplit";
    }
    return "?";
}

void check_s_range(Prime p, u64 s) {
    if (s < 1 || s > p - 2) {
        throw Error(ErrorCode::SOutOfRange,
                    "s = " + std::to_string(s) + " outside [1, " + std::to_string(p - 2) + "]");
    }
}

ThetaValue theta(Prime p, u64 s, u64 qs, u64 qs1) {
    check_s_range(p, s);
    return ThetaValue(theta_kernel(p, s, qs % p, qs1 % p));
}

ThetaValue theta_direct(const QuotientContext& ctx, u64 s) {
    const Prime p = ctx.prime();
    check_s_range(p, s);
    return ThetaValue(theta_kernel(p, s, ctx.of_reduced(s), ctx.of_reduced(s + 1)));
}

ThetaValue theta_direct(Prime p, u64 s) { return theta_direct(QuotientContext(p), s); }

ThetaValue theta_oracle(Prime p, u64 s) {
    check_s_range(p, s);
    const u64 m = p.squared();
    const u64 num = pow_mod(s, s, m);
    const u64 den = pow_mod(s + 1, s + 1, m);
    const u64 w = mul_mod(num, inv_mod(den, m), m);
    const u64 q = fermat_quotient(static_cast<i64>(w), p);
    const u64 scale = mul_mod(2 * s % p, (s + 1) % p, p);
    return ThetaValue(legendre(static_cast<i64>(mul_mod(scale, q, p)), p));
}

ThetaValue theta_extended(Prime p, i64 t) {
    const u64 s = reduce_signed(t, p);
    if (s == 0 || s == p - 1) {
        throw Error(ErrorCode::BadResidue,
                    std::to_string(t) + " is 0 or -1 modulo " + std::to_string(p.value()));
    }
    return theta_direct(p, s);
}

ReductionType reduction_type(Prime p, u64 s) { return to_reduction_type(theta_direct(p, s)); }

}  // namespace fermat_lab

#include "fermat_lab/quotient.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace fermat_lab {

namespace {

u64 reduce_coprime(i64 u, Prime p) {
    const u64 r = reduce_signed(u, p.squared());
    if (r % p == 0) {
        throw Error(ErrorCode::DivisibleByP,
                    std::to_string(u) + " is divisible by " + std::to_string(p.value()));
    }
    return r;
}

}  // namespace

QuotientContext::QuotientContext(Prime p) : p_(p), p2_(p.squared()), mont_(p.squared()) {}

u64 QuotientContext::operator()(i64 u) const { return of_reduced(reduce_coprime(u, p_)); }

u64 fermat_quotient(i64 u, Prime p) {
    const u64 r = reduce_coprime(u, p);
    const u64 x = pow_mod(r, p - 1, p.squared());
    return (x - 1) / p;
}

u64 quotient_of_rational(i64 num, i64 den, Prime p) {
    const u64 a = fermat_quotient(num, p);
    const u64 b = fermat_quotient(den, p);
    return (a + p - b) % p;
}

u64 shift_identity(i64 u, i64 v, Prime p) {
    const u64 q = fermat_quotient(u, p);
    const u64 ratio = mul_mod(reduce_signed(v, p), inv_mod(reduce_signed(u, p), p), p);
    return (q + p - ratio) % p;
}

u64 QuotientTable::at(u64 w) const {
    if (w == 0 || w > limit()) {
        throw Error(ErrorCode::LimitTooLarge,
                    "index " + std::to_string(w) + " outside table of size " + std::to_string(limit()));
    }
    return values_[w];
}

FactorSieve::FactorSieve(u64 limit) : spf_(limit + 1, 0), cofactor_(limit + 1, 0) {
    if (limit >= 1) {
        spf_[1] = 1;
        cofactor_[1] = 1;
    }
    // Linear sieve: every composite is written once, as spf * cofactor.
    for (u64 w = 2; w <= limit; ++w) {
        if (spf_[w] == 0) {
            spf_[w] = static_cast<std::uint32_t>(w);
            cofactor_[w] = 1;
            primes_.push_back(static_cast<std::uint32_t>(w));
        }
        const std::uint32_t f = spf_[w];
        for (std::uint32_t ell : primes_) {
            const u64 c = ell * w;
            if (ell > f || c > limit) break;
            spf_[c] = ell;
            cofactor_[c] = static_cast<std::uint32_t>(w);
        }
    }
}

QuotientTable build_table(Prime p, u64 limit) { return build_table(p, limit, FactorSieve(limit)); }

QuotientTable build_table(Prime p, u64 limit, const FactorSieve& sieve) {
    if (limit >= p) {
        throw Error(ErrorCode::LimitTooLarge,
                    "table limit " + std::to_string(limit) + " must be below p = " + std::to_string(p.value()));
    }
    if (limit == 0) throw Error(ErrorCode::LimitTooLarge, "table limit must be at least 1");
    if (sieve.limit() < limit) {
        throw Error(ErrorCode::LimitTooLarge, "factor sieve covers only " + std::to_string(sieve.limit()));
    }

    std::vector<std::uint32_t> q(limit + 1, 0);
    const auto all_primes = sieve.primes();
    const auto primes = all_primes.first(static_cast<std::size_t>(
        std::upper_bound(all_primes.begin(), all_primes.end(), limit) - all_primes.begin()));

    // q at primes: the exponent p-1 is shared, so run four chains in lockstep.
    const Montgomery mont(p.squared());
    constexpr std::size_t kLanes = 4;
    const u64 e = p - 1;
    const int top = 63 - std::countl_zero(e);
    for (std::size_t i = 0; i < primes.size(); i += kLanes) {
        u64 base[kLanes], acc[kLanes];
        for (std::size_t k = 0; k < kLanes; ++k) {
            base[k] = mont.to_mont(i + k < primes.size() ? primes[i + k] : 1);
            acc[k] = base[k];
        }
        for (int bit = top - 1; bit >= 0; --bit) {
            for (std::size_t k = 0; k < kLanes; ++k) acc[k] = mont.mul(acc[k], acc[k]);
            if ((e >> bit) & 1) {
                for (std::size_t k = 0; k < kLanes; ++k) acc[k] = mont.mul(acc[k], base[k]);
            }
        }
        for (std::size_t k = 0; k < kLanes && i + k < primes.size(); ++k) {
            q[primes[i + k]] = static_cast<std::uint32_t>((mont.from_mont(acc[k]) - 1) / p);
        }
    }

    // Composites from multiplicativity: q(ab) = q(a) + q(b) mod p.
    for (u64 w = 4; w <= limit; ++w) {
        const u64 f = sieve.smallest_factor(w);
        if (f == w) continue;
        u64 sum = u64{q[f]} + q[sieve.cofactor(w)];
        if (sum >= p) sum -= p;
        q[w] = static_cast<std::uint32_t>(sum);
    }
    return QuotientTable(p, std::move(q));
}

}  // namespace fermat_lab

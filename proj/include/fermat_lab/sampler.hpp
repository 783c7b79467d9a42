#pragma once

// Quasi-Monte Carlo sampling of s = ell*u from solutions of r*v - ell*u = 1,
// with ell a prime in L = [U - delta, U] and r in R = [U - 3 delta, U - 2 delta],
// U = ceil(sqrt(p)). Theta is evaluated from a quotient table on [1, U].

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "fermat_lab/modmath.hpp"
#include "fermat_lab/quotient.hpp"
#include "fermat_lab/theta.hpp"

namespace fermat_lab {

struct SamplerParams {
    Prime p{3};
    u64 U = 0;
    u64 delta = 0;
    u64 theoretical_delta = 0;  // ceil(p^{3/8} ln p)
    u64 seed = 0;
    std::vector<u64> ell_primes;  // primes of L, ascending

    u64 r_lo() const noexcept { return U - 3 * delta; }
    u64 r_hi() const noexcept { return U - 2 * delta; }
};

struct Sample {
    u64 ell = 0;
    u64 r = 0;
    u64 u = 0;
    u64 v = 0;
    u64 s_raw = 0;  // ell * u
    u64 s = 0;      // s_raw mod p, in [1, p-2]
    ThetaValue theta;
};

struct SampleBatch {
    SamplerParams params;
    std::vector<Sample> samples;
    double discrepancy = 0.0;        // star discrepancy of s_raw / p
    double pair_discrepancy = 0.0;   // diagnostic: star discrepancy of u / r
    double theorem_bound = 0.0;      // p^{-1/8} ln p, not a bound at desk scale
    double f0 = 0.0;
    double f1 = 0.0;
    double fm1 = 0.0;
};

struct BatchOptions {
    std::optional<u64> delta;  // override
    bool deduplicate = false;  // measure discrepancy on distinct s_raw only
    unsigned workers = 1;
};

u64 ceil_sqrt(u64 n) noexcept;

/// U = ceil(sqrt p); delta = min(theoretical, floor((U-1)/4)), doubled while L
/// holds no prime. Requires p >= 10^4.
SamplerParams default_params(Prime p, u64 seed, std::optional<u64> delta_override = std::nullopt);

/// Quotients needed by draw_sample: q_p(w) for 1 <= w <= U.
QuotientTable sampler_table(const SamplerParams& params);

Sample draw_sample(const SamplerParams& params, const QuotientTable& table, std::mt19937_64& rng);

/// Samples are drawn in fixed chunks, each with its own RNG stream seeded
/// from (seed, chunk), so output does not depend on the worker count.
SampleBatch run_batch(Prime p, u64 count, u64 seed, const BatchOptions& options = {});

/// sup_gamma |#{x_m <= gamma}/M - gamma| for points in [0, 1].
double star_discrepancy(std::span<const double> points);

struct CollisionReport {
    u64 pairs = 0;       // admissible (ell, r)
    u64 distinct = 0;    // distinct products ell*u
    u64 collisions() const noexcept { return pairs - distinct; }
};

/// Exhaustive enumeration of s = ell*u over L x R.
CollisionReport product_collisions(const SamplerParams& params);

}  // namespace fermat_lab

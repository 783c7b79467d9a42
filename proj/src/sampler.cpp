#include "fermat_lab/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>
#include <unordered_set>

namespace fermat_lab {

namespace {

constexpr u64 kMinSamplerPrime = 10000;
constexpr u64 kChunk = 1024;

bool valid_delta(u64 U, u64 delta) { return delta > 0 && 3 * delta < U; }

}  // namespace

u64 ceil_sqrt(u64 n) noexcept {
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r * r == n ? r : r + 1;
}

SamplerParams default_params(Prime p, u64 seed, std::optional<u64> delta_override) {
    if (p < kMinSamplerPrime) {
        throw Error(ErrorCode::PTooSmall, "the sampler needs p >= 10^4");
    }
    SamplerParams params;
    params.p = p;
    params.seed = seed;
    params.U = ceil_sqrt(p);
    const double pd = static_cast<double>(p.value());
    params.theoretical_delta = static_cast<u64>(std::ceil(std::pow(pd, 0.375) * std::log(pd)));

    u64 delta = delta_override ? *delta_override : std::min(params.theoretical_delta, (params.U - 1) / 4);
    if (!valid_delta(params.U, delta)) {
        throw Error(ErrorCode::NoValidParams,
                    "delta = " + std::to_string(delta) + " violates 0 < 3*delta < U = " + std::to_string(params.U));
    }
    while (true) {
        params.ell_primes = primes_in_range(params.U - delta, params.U);
        if (!params.ell_primes.empty()) break;
        delta *= 2;
        if (!valid_delta(params.U, delta)) {
            throw Error(ErrorCode::NoValidParams, "no prime in [U - delta, U] for any admissible delta");
        }
    }
    params.delta = delta;
    return params;
}

QuotientTable sampler_table(const SamplerParams& params) { return build_table(params.p, params.U); }

Sample draw_sample(const SamplerParams& params, const QuotientTable& table, std::mt19937_64& rng) {
    const u64 p = params.p;
    std::uniform_int_distribution<std::size_t> pick_ell(0, params.ell_primes.size() - 1);
    std::uniform_int_distribution<u64> pick_r(params.r_lo(), params.r_hi());
    Sample x;
    do {
        x.ell = params.ell_primes[pick_ell(rng)];
        x.r = pick_r(rng);
    } while (x.r <= 1 || x.r % x.ell == 0);

    const UnitSolution sol = solve_unit_equation(x.r, x.ell);
    x.u = sol.u;
    x.v = sol.v;
    x.s_raw = x.ell * x.u;
    x.s = x.s_raw % p;

    // q(s) = q(ell) + q(u) and q(s+1) = q(r) + q(v) by multiplicativity.
    const u64 qs = (table[x.ell] + table[x.u]) % p;
    const u64 qs1 = (table[x.r] + table[x.v]) % p;
    x.theta = ThetaValue(theta_kernel(p, x.s, qs, qs1));
    return x;
}

double star_discrepancy(std::span<const double> points) {
    if (points.empty()) throw Error(ErrorCode::EmptyInput, "star discrepancy of an empty point set");
    std::vector<double> x(points.begin(), points.end());
    std::sort(x.begin(), x.end());
    const double m = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double above = static_cast<double>(i + 1) / m - x[i];
        const double below = x[i] - static_cast<double>(i) / m;
        d = std::max({d, above, below});
    }
    return std::max(d, 0.0);
}

SampleBatch run_batch(Prime p, u64 count, u64 seed, const BatchOptions& options) {
    if (count == 0) throw Error(ErrorCode::EmptyInput, "sample count must be at least 1");
    SampleBatch batch;
    batch.params = default_params(p, seed, options.delta);
    const QuotientTable table = sampler_table(batch.params);
    batch.samples.resize(count);

    const u64 chunks = (count + kChunk - 1) / kChunk;
    auto run_chunk = [&](u64 c) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
        std::mt19937_64 rng(seq);
        const u64 end = std::min(count, (c + 1) * kChunk);
        for (u64 i = c * kChunk; i < end; ++i) batch.samples[i] = draw_sample(batch.params, table, rng);
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(chunks)));
    if (workers == 1) {
        for (u64 c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (u64 c = w; c < chunks; c += workers) run_chunk(c);
            });
        }
    }

    u64 tally[3] = {0, 0, 0};
    std::vector<double> points, pair_points;
    points.reserve(count);
    pair_points.reserve(count);
    std::unordered_set<u64> seen;
    const double pd = static_cast<double>(p.value());
    for (const Sample& x : batch.samples) {
        ++tally[x.theta.value() + 1];
        if (options.deduplicate && !seen.insert(x.s_raw).second) continue;
        points.push_back(std::min(1.0, static_cast<double>(x.s_raw) / pd));
        pair_points.push_back(static_cast<double>(x.u) / static_cast<double>(x.r));
    }
    batch.discrepancy = star_discrepancy(points);
    batch.pair_discrepancy = star_discrepancy(pair_points);
    batch.theorem_bound = std::pow(pd, -0.125) * std::log(pd);
    const double m = static_cast<double>(count);
    batch.fm1 = static_cast<double>(tally[0]) / m;
    batch.f0 = static_cast<double>(tally[1]) / m;
    batch.f1 = static_cast<double>(tally[2]) / m;
    return batch;
}

CollisionReport product_collisions(const SamplerParams& params) {
    CollisionReport rep;
    std::unordered_set<u64> products;
    for (u64 ell : params.ell_primes) {
        for (u64 r = std::max<u64>(params.r_lo(), 2); r <= params.r_hi(); ++r) {
            if (r % ell == 0) continue;
            const UnitSolution sol = solve_unit_equation(r, ell);
            ++rep.pairs;
            products.insert(ell * sol.u);
        }
    }
    rep.distinct = products.size();
    return rep;
}

}  // namespace fermat_lab

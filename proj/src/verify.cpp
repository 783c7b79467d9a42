#include "fermat_lab/verify.hpp"

#include <algorithm>
#include <functional>

#include "fermat_lab/counting.hpp"
#include "fermat_lab/identities.hpp"
#include "fermat_lab/orbits.hpp"
#include "fermat_lab/quotient.hpp"
#include "fermat_lab/theta.hpp"

namespace fermat_lab {

namespace {

class Family {
public:
    explicit Family(std::string name) { result_.name = std::move(name); }

    void check(bool ok, const std::function<std::string()>& describe) {
        ++result_.checks;
        if (!ok) {
            if (result_.violations++ == 0) result_.first_failure = describe();
        }
    }
    FamilyResult take() { return std::move(result_); }

private:
    FamilyResult result_;
};

std::string at(u64 p, u64 s) { return "p=" + std::to_string(p) + " s=" + std::to_string(s); }

}  // namespace

std::vector<FamilyResult> verify_all(u64 max_p) {
    const auto primes = primes_in_range(3, std::max<u64>(max_p, 3));
    const u64 quadratic_cap = std::min<u64>(max_p, 300);
    std::vector<FamilyResult> out;

    {
        Family f("modmath: binary Jacobi = Euler criterion");
        for (u64 q : primes) {
            if (q > 1000) break;
            const Prime p(q);
            for (u64 a = 0; a < p; ++a) {
                const i64 ai = static_cast<i64>(a);
                f.check(legendre(ai, p) == legendre_euler(ai, p), [&] { return at(q, a); });
            }
        }
        out.push_back(f.take());
    }
    {
        Family f("modmath: cube roots of unity");
        for (u64 q : primes) {
            if (q < 5) continue;
            const auto roots = roots_of_unity3(Prime(q));
            f.check(roots.has_value() == (q % 3 == 1), [&] { return "p=" + std::to_string(q); });
            if (roots) {
                for (u64 x : {roots->first, roots->second}) {
                    f.check((x * x + x + 1) % q == 0, [&] { return at(q, x); });
                }
            }
        }
        out.push_back(f.take());
    }
    {
        Family f("quotient: table = direct, multiplicativity, shift identity");
        for (u64 q : primes) {
            if (q > 2000) break;
            const Prime p(q);
            const QuotientTable table = build_table(p, p - 1);
            for (u64 w = 1; w <= p - 1; ++w) {
                f.check(table[w] == fermat_quotient(static_cast<i64>(w), p), [&] { return at(q, w); });
            }
            for (u64 u = 1; u <= p - 1 && u <= 40; ++u) {
                for (u64 v = 1; v <= p - 1 && v <= 40; ++v) {
                    const u64 prod = u * v % p.squared();
                    f.check(fermat_quotient(static_cast<i64>(prod), p) == (table[u] + table[v]) % p,
                            [&] { return at(q, u) + " v=" + std::to_string(v); });
                    if (q <= 200) {
                        f.check(fermat_quotient(static_cast<i64>(u + v * q), p) ==
                                    shift_identity(static_cast<i64>(u), static_cast<i64>(v), p),
                                [&] { return at(q, u) + " v=" + std::to_string(v); });
                    }
                }
            }
        }
        out.push_back(f.take());
    }
    {
        Family f("theta: direct = oracle, theta_{p,1} shortcut, period p");
        for (u64 q : primes) {
            const Prime p(q);
            if (q <= 500) {
                for (u64 s = 1; s <= p - 2; ++s) {
                    f.check(theta_direct(p, s) == theta_oracle(p, s), [&] { return at(q, s); });
                }
            }
            if (q >= 5 && q <= 10000) {
                const i64 shortcut = -2 * static_cast<i64>(fermat_quotient(2, p));
                f.check(theta_direct(p, 1).value() == legendre(shortcut, p), [&] { return at(q, 1); });
            }
            if (q <= quadratic_cap) {
                for (u64 s = 1; s <= p - 2; ++s) {
                    for (u64 k : {1, 2}) {
                        f.check(theta_extended(p, static_cast<i64>(s + k * q)) == theta_direct(p, s),
                                [&] { return at(q, s) + " k=" + std::to_string(k); });
                    }
                }
            }
        }
        out.push_back(f.take());
    }
    {
        Family f("orbits: involutions, braid relation, counts, theta constancy");
        for (u64 q : primes) {
            if (q < 5) continue;
            const Prime p(q);
            for (u64 s = 1; s <= p - 2; ++s) {
                f.check(apply_F(p, apply_F(p, s)) == s && apply_G(p, apply_G(p, s)) == s, [&] { return at(q, s); });
                u64 x = s;
                for (int i = 0; i < 3; ++i) x = apply_F(p, apply_G(p, x));
                f.check(x == s, [&] { return at(q, s); });
            }
            const OrbitDecomposition d = decompose(p);
            if (q >= 11) {
                f.check(d.orbits.size() == expected_orbit_count(p), [&] { return "p=" + std::to_string(q); });
            }
            if (q <= 2000) {
                const QuotientContext ctx(p);
                for (const Orbit& o : d.orbits) {
                    const ThetaValue t0 = theta_direct(ctx, o.representative());
                    for (u64 m : o.members) f.check(theta_direct(ctx, m) == t0, [&] { return at(q, m); });
                }
            }
        }
        out.push_back(f.take());
    }
    {
        Family f("counting: mode equivalence, sum rule, N_0 residues");
        for (u64 q : primes) {
            if (q > 3000) break;
            const Prime p(q);
            const CountRecord a = count_streaming(p);
            const CountRecord b = count_table(p);
            const CountRecord c = count_orbitwise(p);
            const CountRecord d = count_orbitwise(p, QuotientBacking::Table);
            f.check(a.same_census(b) && a.same_census(c) && a.same_census(d), [&] { return "p=" + std::to_string(q); });
            f.check(a.n0 + a.n1 + a.nm1 == q - 2, [&] { return "p=" + std::to_string(q); });
            if (q >= 11 && q != 1093 && q != 3511) {
                const u64 expect = q % 3 == 1 ? 2 : 0;
                f.check(a.n0 % 6 == expect, [&] { return "p=" + std::to_string(q); });
            }
        }
        out.push_back(f.take());
    }
    {
        Family f("identities: expansion = exact numerator = f(s+1)");
        for (u64 q : primes) {
            if (q < 5 || q > quadratic_cap) continue;
            f.check(hb_chain_check(Prime(q)), [&] { return "p=" + std::to_string(q); });
        }
        for (u64 q : primes) {
            if (q < 5 || q > 1000) continue;
            f.check(f_eval(Prime(q), 1) == 0, [&] { return "f(1) at p=" + std::to_string(q); });
        }
        out.push_back(f.take());
    }
    return out;
}

}  // namespace fermat_lab

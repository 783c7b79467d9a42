#pragma once

// The permutations F(s) = -1 - s and G(s) = 1/s of S_p = {1, ..., p-2} and
// the orbits of the six-element group they generate.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fermat_lab/modmath.hpp"

namespace fermat_lab {

struct Orbit {
    std::vector<u64> members;  // sorted, distinct

    u64 representative() const noexcept { return members.front(); }
    std::size_t size() const noexcept { return members.size(); }
    bool contains(u64 s) const;
};

struct OrbitDecomposition {
    Prime p{3};
    std::vector<Orbit> orbits;  // ordered by representative
    Orbit special_fixed;        // {-1/2, 1, -2}
    std::optional<Orbit> special_roots;  // {s0, s1} when p = 1 mod 3
};

u64 apply_F(Prime p, u64 s);
u64 apply_G(Prime p, u64 s);

/// All six images h(s), h in <F, G>, given a = 1/s and b = 1/(s+1) mod p.
/// Entries may repeat on short orbits.
inline std::array<u64, 6> orbit_images(u64 p, u64 s, u64 inv_s, u64 inv_s1) noexcept {
    return {
        s,                             // id
        p - 1 - s,                     // F
        inv_s,                         // G
        p - 1 - inv_s,                 // FG
        p - inv_s1,                    // GF:  -1/(s+1)
        inv_s1 - 1,                    // FGF: -s/(s+1)
    };
}

Orbit orbit_of(Prime p, u64 s);

OrbitDecomposition decompose(Prime p);

/// (p+5)/6 for p = 1 mod 3, (p+1)/6 for p = 2 mod 3; throws PTooSmall for p < 11.
u64 expected_orbit_count(Prime p);

/// One orbit per line: "min: m1,m2,...".
std::string format_decomposition(const OrbitDecomposition& d);

}  // namespace fermat_lab

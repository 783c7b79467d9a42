#include "fermat_lab/orbits.hpp"

#include <algorithm>
#include <sstream>

#include "fermat_lab/theta.hpp"

namespace fermat_lab {

bool Orbit::contains(u64 s) const { return std::binary_search(members.begin(), members.end(), s); }

u64 apply_F(Prime p, u64 s) {
    check_s_range(p, s);
    return p - 1 - s;
}

u64 apply_G(Prime p, u64 s) {
    check_s_range(p, s);
    return inv_mod(s, p);
}

Orbit orbit_of(Prime p, u64 s) {
    check_s_range(p, s);
    std::vector<u64> members{s};
    // Closure by breadth-first search; at most six elements.
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (u64 next : {apply_F(p, members[i]), apply_G(p, members[i])}) {
            if (std::find(members.begin(), members.end(), next) == members.end()) members.push_back(next);
        }
    }
    std::sort(members.begin(), members.end());
    return Orbit{std::move(members)};
}

OrbitDecomposition decompose(Prime p) {
    if (p < 5) throw Error(ErrorCode::PTooSmall, "orbit decomposition needs p >= 5");
    OrbitDecomposition d;
    d.p = p;
    std::vector<bool> visited(p - 1, false);
    for (u64 s = 1; s <= p - 2; ++s) {
        if (visited[s]) continue;
        Orbit o = orbit_of(p, s);
        for (u64 m : o.members) visited[m] = true;
        d.orbits.push_back(std::move(o));
    }

    auto find_orbit = [&](u64 s) -> const Orbit& {
        for (const Orbit& o : d.orbits) {
            if (o.contains(s)) return o;
        }
        throw Error(ErrorCode::SOutOfRange, "point missing from decomposition");
    };
    d.special_fixed = find_orbit(1);
    if (auto roots = roots_of_unity3(p)) d.special_roots = find_orbit(roots->first);
    return d;
}

u64 expected_orbit_count(Prime p) {
    if (p < 11) throw Error(ErrorCode::PTooSmall, "orbit count formula needs p >= 11");
    return p % 3 == 1 ? (p + 5) / 6 : (p + 1) / 6;
}

std::string format_decomposition(const OrbitDecomposition& d) {
    std::ostringstream out;
    for (const Orbit& o : d.orbits) {
        out << o.representative() << ":";
        for (std::size_t i = 0; i < o.members.size(); ++i) out << (i ? "," : " ") << o.members[i];
        out << '\n';
    }
    return out.str();
}

}  // namespace fermat_lab

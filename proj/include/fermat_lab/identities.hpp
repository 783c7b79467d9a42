#pragma once

// Cross-checks for the congruence chain behind the N_0(p) = O(p^{2/3}) bound:
//   s q_p(s) - (s+1) q_p(s+1)  =  (s^p - (s+1)^p + 1) / p  =  f(s+1)  (mod p),
// where f(u) = sum_{j=1}^{p-1} u^j / j.

#include <vector>

#include "fermat_lab/modmath.hpp"

namespace fermat_lab {

/// f(u) mod p for 1 <= u <= p-1, by direct summation (O(p)).
u64 f_eval(Prime p, u64 u);

/// Verifies the three-way agreement for every s in [1, p-2]; p <= 10^4.
bool hb_chain_check(Prime p);

/// f(u) for u in [2, p-1] (index u; entries 0 and 1 unused), computed from
/// ((u-1)^p - u^p + 1) / p in O(p log p).
std::vector<u64> f_value_table(Prime p);

/// #{u in [2, p-1] : f(u) = r mod p}; p <= 10^5.
u64 f_fiber_count(Prime p, u64 r);

struct FiberStats {
    u64 max_fiber = 0;
    u64 argmax_residue = 0;
    double ratio = 0.0;  // max_fiber / p^{2/3}
};

/// Largest fiber of f over all residues r.
FiberStats f_fiber_stats(Prime p);

}  // namespace fermat_lab

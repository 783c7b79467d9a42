#pragma once

// Exact census N_0(p), N_1(p), N_{-1}(p) of theta_{p,s} over s in [1, p-2].

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fermat_lab/modmath.hpp"
#include "fermat_lab/quotient.hpp"

namespace fermat_lab {

enum class CountMode { Streaming, Table, Orbitwise };

std::string_view to_string(CountMode mode) noexcept;
CountMode parse_count_mode(std::string_view text);

struct CountRecord {
    u64 p = 0;
    int class3 = 0;  // p mod 3
    u64 n0 = 0;
    u64 n1 = 0;
    u64 nm1 = 0;
    CountMode mode = CountMode::Streaming;
    double elapsed = 0.0;  // seconds

    bool same_census(const CountRecord& o) const noexcept {
        return p == o.p && n0 == o.n0 && n1 == o.n1 && nm1 == o.nm1;
    }
};

// All census routines accept any odd prime; S_3 = {1}.

/// theta_direct for every s; O(log p) memory.
CountRecord count_streaming(Prime p);

/// One full quotient table, then a lookup pair and a Legendre symbol per s.
CountRecord count_table(Prime p);

/// Where the orbitwise census gets its Fermat quotients.
///   Direct: two exponentiations mod p^2 per orbit; p bits of memory.
///   Table:  a quotient table over [1, (p+1)/2] plus a quadratic-residue
///           bitmap; about 2p bytes of memory, several times faster.
enum class QuotientBacking { Direct, Table };

/// One theta evaluation per orbit of <F, G>, weighted by the orbit size.
/// Orbit minima never exceed (p-1)/2, so the scan stops there. A shared
/// FactorSieve covering (p+1)/2 speeds up the Table backing.
CountRecord count_orbitwise(Prime p, QuotientBacking backing = QuotientBacking::Direct,
                            const FactorSieve* sieve = nullptr);

CountRecord count(Prime p, CountMode mode, QuotientBacking backing = QuotientBacking::Direct,
                  const FactorSieve* sieve = nullptr);

/// Orbitwise above 10^4, streaming below.
CountMode default_mode(Prime p) noexcept;

/// Primes 3 <= p <= limit with q_p(2) = 0.
std::vector<u64> wieferich_scan(u64 limit);

bool is_wieferich(Prime p);

// CSV: "p,class3,n0,n1,nm1,mode,elapsed".
std::string_view csv_header() noexcept;
std::string to_csv(const CountRecord& r);
CountRecord parse_csv_line(std::string_view line);
std::vector<CountRecord> read_csv(std::istream& in);
void write_csv(std::ostream& out, const std::vector<CountRecord>& records);

std::string to_jsonl(const CountRecord& r);

}  // namespace fermat_lab

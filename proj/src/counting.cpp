#include "fermat_lab/counting.hpp"

#include <chrono>
#include <cstdio>
#include <istream>
#include <ostream>
#include <charconv>

#include "fermat_lab/orbits.hpp"
#include "fermat_lab/quotient.hpp"
#include "fermat_lab/theta.hpp"

namespace fermat_lab {

namespace {

using Clock = std::chrono::steady_clock;

struct Tally {
    u64 n[3] = {0, 0, 0};  // indexed by theta + 1

    void add(int theta, u64 weight = 1) noexcept { n[theta + 1] += weight; }

    CountRecord finish(Prime p, CountMode mode, Clock::time_point start) const {
        CountRecord r;
        r.p = p;
        r.class3 = static_cast<int>(p % 3);
        r.nm1 = n[0];
        r.n0 = n[1];
        r.n1 = n[2];
        r.mode = mode;
        r.elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        return r;
    }
};

}  // namespace

std::string_view to_string(CountMode mode) noexcept {
    switch (mode) {
        case CountMode::Streaming: return "streaming";
        case CountMode::Table: return "table";
        case CountMode::Orbitwise: return "orbitwise";
    }
    return "?";
}

CountMode parse_count_mode(std::string_view text) {
    if (text == "streaming") return CountMode::Streaming;
    if (text == "table") return CountMode::Table;
    if (text == "orbitwise") return CountMode::Orbitwise;
    throw Error(ErrorCode::Parse, "unknown counting mode '" + std::string(text) + "'");
}

CountRecord count_streaming(Prime p) {
    const auto start = Clock::now();
    const QuotientContext ctx(p);
    Tally tally;
    u64 q_next = ctx.of_reduced(1);
    for (u64 s = 1; s <= p - 2; ++s) {
        const u64 qs = q_next;
        q_next = ctx.of_reduced(s + 1);
        tally.add(theta_kernel(p, s, qs, q_next));
    }
    return tally.finish(p, CountMode::Streaming, start);
}

CountRecord count_table(Prime p) {
    const auto start = Clock::now();
    QuotientTable table;
    try {
        table = build_table(p, p - 1);
    } catch (const std::bad_alloc&) {
        throw Error(ErrorCode::Io, "out of memory allocating quotient table for p = " + std::to_string(p.value()));
    }
    Tally tally;
    for (u64 s = 1; s <= p - 2; ++s) tally.add(theta_kernel(p, s, table[s], table[s + 1]));
    return tally.finish(p, CountMode::Table, start);
}

namespace {

class Bitmap {
public:
    explicit Bitmap(u64 bits) : words_((bits + 63) / 64, 0) {}
    bool test(u64 i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(u64 i) noexcept { words_[i >> 6] |= u64{1} << (i & 63); }

private:
    std::vector<u64> words_;
};

/// Nonzero squares mod p as a bitmap, giving Legendre symbols by lookup.
class ResidueBitmap {
public:
    explicit ResidueBitmap(u64 p) : p_(p), squares_(p) {
        u64 x = 0;
        for (u64 i = 1; i <= (p - 1) / 2; ++i) {
            x += 2 * i - 1;  // i^2 = (i-1)^2 + 2i - 1
            while (x >= p) x -= p;
            squares_.set(x);
        }
    }
    int legendre(u64 a) const noexcept {
        if (a == 0) return 0;
        return squares_.test(a) ? 1 : -1;
    }

private:
    u64 p_;
    Bitmap squares_;
};

template <typename ThetaAt>
void orbit_sweep(u64 p, Tally& tally, ThetaAt&& theta_at) {
    const Barrett red(p);
    constexpr std::size_t kBlock = 64;
    Bitmap visited(p);
    const u64 last = (p - 1) / 2;
    u64 next = 1;
    std::vector<u64> cand, prefix, inv;
    cand.reserve(2 * kBlock);
    prefix.resize(2 * kBlock);
    inv.resize(2 * kBlock);

    while (next <= last) {
        // Gather unvisited candidates and invert s and s+1 for all of them
        // with one extended gcd (Montgomery's simultaneous inversion).
        cand.clear();
        while (next <= last && cand.size() < 2 * kBlock) {
            if (!visited.test(next)) {
                cand.push_back(next);
                cand.push_back(next + 1);
            }
            ++next;
        }
        if (cand.empty()) break;
        const std::size_t n = cand.size();
        u64 acc = 1;
        for (std::size_t j = 0; j < n; ++j) {
            prefix[j] = acc;
            acc = red.mul(acc, cand[j]);
        }
        u64 acc_inv = inv_mod(acc, p);
        for (std::size_t j = n; j-- > 0;) {
            inv[j] = red.mul(acc_inv, prefix[j]);
            acc_inv = red.mul(acc_inv, cand[j]);
        }

        for (std::size_t j = 0; j < n; j += 2) {
            const u64 s = cand[j];
            if (visited.test(s)) continue;
            u64 size = 0;
            for (u64 m : orbit_images(p, s, inv[j], inv[j + 1])) {
                if (!visited.test(m)) {
                    visited.set(m);
                    ++size;
                }
            }
            tally.add(theta_at(s), size);
        }
    }
}

}  // namespace

CountRecord count_orbitwise(Prime p, QuotientBacking backing, const FactorSieve* sieve) {
    const auto start = Clock::now();
    Tally tally;
    if (backing == QuotientBacking::Direct) {
        const QuotientContext ctx(p);
        orbit_sweep(p, tally, [&](u64 s) { return theta_kernel(p, s, ctx.of_reduced(s), ctx.of_reduced(s + 1)); });
    } else {
        const u64 limit = (p + 1) / 2;
        const QuotientTable table =
            sieve && sieve->limit() >= limit ? build_table(p, limit, *sieve) : build_table(p, limit);
        const ResidueBitmap residues(p);
        const Barrett red(p);
        orbit_sweep(p, tally, [&](u64 s) {
            const u64 s1 = s + 1;
            const u64 lhs = red.mul(s, table[s]);
            const u64 rhs = red.mul(s1, table[s1]);
            const u64 expansion = lhs >= rhs ? lhs - rhs : lhs + p - rhs;
            return residues.legendre(red.mul(red.mul(2 * s, s1), expansion));
        });
    }
    return tally.finish(p, CountMode::Orbitwise, start);
}

CountRecord count(Prime p, CountMode mode, QuotientBacking backing, const FactorSieve* sieve) {
    switch (mode) {
        case CountMode::Streaming: return count_streaming(p);
        case CountMode::Table: return count_table(p);
        case CountMode::Orbitwise: return count_orbitwise(p, backing, sieve);
    }
    return count_streaming(p);
}

CountMode default_mode(Prime p) noexcept { return p > 10000 ? CountMode::Orbitwise : CountMode::Streaming; }

bool is_wieferich(Prime p) { return pow_mod(2, p - 1, p.squared()) == 1; }

std::vector<u64> wieferich_scan(u64 limit) {
    std::vector<u64> out;
    if (limit < 3) return out;
    for (u64 q : primes_in_range(3, std::min(limit, kMaxPrimeExclusive - 1))) {
        const Prime p(q);
        const Montgomery mont(p.squared());
        if (mont.pow(mont.to_mont(2), p - 1) == mont.one()) out.push_back(q);
    }
    return out;
}

std::string_view csv_header() noexcept { return "p,class3,n0,n1,nm1,mode,elapsed"; }

std::string to_csv(const CountRecord& r) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%llu,%d,%llu,%llu,%llu,%s,%.6f", static_cast<unsigned long long>(r.p), r.class3,
                  static_cast<unsigned long long>(r.n0), static_cast<unsigned long long>(r.n1),
                  static_cast<unsigned long long>(r.nm1), to_string(r.mode).data(), r.elapsed);
    return buf;
}

namespace {

template <typename T>
T parse_number(std::string_view field, std::string_view what) {
    T value{};
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
        throw Error(ErrorCode::Parse, "bad " + std::string(what) + " field '" + std::string(field) + "'");
    }
    return value;
}

}  // namespace

CountRecord parse_csv_line(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = line.find(',', pos);
        fields.push_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    if (fields.size() != 7) throw Error(ErrorCode::Parse, "expected 7 fields in '" + std::string(line) + "'");
    CountRecord r;
    r.p = parse_number<u64>(fields[0], "p");
    r.class3 = parse_number<int>(fields[1], "class3");
    r.n0 = parse_number<u64>(fields[2], "n0");
    r.n1 = parse_number<u64>(fields[3], "n1");
    r.nm1 = parse_number<u64>(fields[4], "nm1");
    r.mode = parse_count_mode(fields[5]);
    r.elapsed = parse_number<double>(fields[6], "elapsed");
    return r;
}

std::vector<CountRecord> read_csv(std::istream& in) {
    std::vector<CountRecord> out;
    std::string line;
    if (!std::getline(in, line)) return out;
    if (line.rfind(csv_header(), 0) != 0) throw Error(ErrorCode::Parse, "missing CSV header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        out.push_back(parse_csv_line(line));
    }
    return out;
}

void write_csv(std::ostream& out, const std::vector<CountRecord>& records) {
    out << csv_header() << '\n';
    for (const CountRecord& r : records) out << to_csv(r) << '\n';
}

std::string to_jsonl(const CountRecord& r) {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "{\"p\":%llu,\"class3\":%d,\"n0\":%llu,\"n1\":%llu,\"nm1\":%llu,\"mode\":\"%s\",\"elapsed\":%.6f}",
                  static_cast<unsigned long long>(r.p), r.class3, static_cast<unsigned long long>(r.n0),
                  static_cast<unsigned long long>(r.n1), static_cast<unsigned long long>(r.nm1),
                  to_string(r.mode).data(), r.elapsed);
    return buf;
}

}  // namespace fermat_lab

#include <doctest.h>

#include <random>
#include <sstream>

#include "fermat_lab/counting.hpp"
#include "oracles.hpp"

using namespace fermat_lab;

namespace {

void check_modes_agree(u64 q) {
    const Prime p(q);
    const CountRecord a = count_streaming(p);
    const CountRecord b = count_table(p);
    const CountRecord c = count_orbitwise(p);
    const CountRecord d = count_orbitwise(p, QuotientBacking::Table);
    INFO("p = " << q);
    REQUIRE(a.same_census(b));
    REQUIRE(a.same_census(c));
    REQUIRE(a.same_census(d));
    REQUIRE(a.n0 + a.n1 + a.nm1 == q - 2);
    REQUIRE(a.class3 == static_cast<int>(q % 3));
}

}  // namespace

TEST_CASE("census examples") {
    const CountRecord r5 = count_streaming(Prime(5));
    CHECK(r5.n0 == 0);
    CHECK(r5.n1 == 3);
    CHECK(r5.nm1 == 0);
    CHECK(r5.class3 == 2);
    CHECK(count_orbitwise(Prime(1093)).n0 == 17);
    CHECK(count_table(Prime(1093)).n0 == 17);
    CHECK(count_orbitwise(Prime(3511), QuotientBacking::Table).n0 == 5);
    CHECK(count_streaming(Prime(3)).n0 + count_streaming(Prime(3)).n1 + count_streaming(Prime(3)).nm1 == 1);
    CHECK(count(Prime(7), CountMode::Table).mode == CountMode::Table);
}

TEST_CASE("all modes equal the brute-force census for p <= 200") {
    for (u64 q : primes_in_range(3, 200)) {
        const oracle::Census want = oracle::census(q);
        for (CountMode m : {CountMode::Streaming, CountMode::Table, CountMode::Orbitwise}) {
            const CountRecord got = count(Prime(q), m);
            REQUIRE(got.n0 == want.n0);
            REQUIRE(got.n1 == want.n1);
            REQUIRE(got.nm1 == want.nm1);
        }
    }
}

TEST_CASE("modes agree on every prime up to 3000") {
    for (u64 q : primes_in_range(3, 3000)) check_modes_agree(q);
}

TEST_CASE("modes agree on random primes up to 10^5") {
    std::mt19937_64 rng(17);
    const auto primes = primes_in_range(3000, 100000);
    for (int i = 0; i < 25; ++i) check_modes_agree(primes[rng() % primes.size()]);
}

TEST_CASE("shared sieve gives the same census") {
    const FactorSieve sieve(60000);
    for (u64 q : {10007ull, 50021ull, 100003ull, 119993ull}) {
        const Prime p(q);
        CHECK(count_orbitwise(p, QuotientBacking::Table, &sieve).same_census(count_orbitwise(p)));
    }
}

TEST_CASE("N_0 mod 6 follows p mod 3 away from Wieferich primes") {
    for (u64 q : primes_in_range(5, 30000)) {
        const Prime p(q);
        const CountRecord r = count_orbitwise(p, QuotientBacking::Table);
        INFO("p = " << q);
        if (is_wieferich(p)) {
            REQUIRE(r.n0 % 6 == (q % 3 == 1 ? 5u : 3u));
        } else {
            REQUIRE(r.n0 % 6 == (q % 3 == 1 ? 2u : 0u));
        }
    }
}

TEST_CASE("Wieferich scan") {
    CHECK(wieferich_scan(1000).empty());
    CHECK(wieferich_scan(10000) == std::vector<u64>{1093, 3511});
    CHECK(wieferich_scan(1000000) == std::vector<u64>{1093, 3511});
    CHECK(is_wieferich(Prime(1093)));
    CHECK_FALSE(is_wieferich(Prime(1091)));
}

TEST_CASE("count mode names") {
    for (CountMode m : {CountMode::Streaming, CountMode::Table, CountMode::Orbitwise})
        CHECK(parse_count_mode(to_string(m)) == m);
    CHECK_THROWS_AS(parse_count_mode("fast"), Error);
    CHECK(default_mode(Prime(10007)) == CountMode::Orbitwise);
    CHECK(default_mode(Prime(9973)) == CountMode::Streaming);
}

TEST_CASE("CSV round trip") {
    std::vector<CountRecord> recs;
    for (u64 q : primes_in_range(3, 400)) recs.push_back(count(Prime(q), q % 2 ? CountMode::Table : CountMode::Streaming));
    recs[3].elapsed = 0.125;
    std::stringstream ss;
    write_csv(ss, recs);
    CHECK(ss.str().rfind(std::string(csv_header()) + "\n", 0) == 0);
    const auto back = read_csv(ss);
    REQUIRE(back.size() == recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
        CHECK(back[i].same_census(recs[i]));
        CHECK(back[i].class3 == recs[i].class3);
        CHECK(back[i].mode == recs[i].mode);
        CHECK(back[i].elapsed == doctest::Approx(recs[i].elapsed).epsilon(1e-6));
    }
    CHECK(to_csv(recs[0]).rfind("3,0,", 0) == 0);
}

TEST_CASE("CSV parse errors") {
    CHECK(parse_csv_line("5,2,0,3,0,streaming,0.000000").n1 == 3);
    for (const char* bad : {"5,2,0,3,0,streaming", "5,2,0,3,0,streaming,0.1,9", "5,2,x,3,0,streaming,0.1",
                            "5,2,0,3,0,warp,0.1", "", "-5,2,0,3,0,table,0"}) {
        try {
            parse_csv_line(bad);
            FAIL("accepted '" << bad << "'");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::Parse);
        }
    }
}

TEST_CASE("JSON lines") {
    const std::string j = to_jsonl(count_streaming(Prime(7)));
    CHECK(j.find("\"p\":7") != std::string::npos);
    CHECK(j.find("\"mode\":\"streaming\"") != std::string::npos);
}
